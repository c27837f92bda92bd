"""Dense M-matrix discretisation of the restricted Dirichlet fractional Laplacian on an interval.

Unknowns live at cell centres of a uniform grid on (a, b).  Off-diagonal
entries are exact cell integrals of the jump kernel; the exterior of the
interval enters only through the exact killing integrals on the diagonal.
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _backend
from .errors import DimensionError, DomainError, NonConvergenceError, SingularResolventError
from .quadrature import leggauss
from .specfun import FractionalOrder, frac_constant

_MAX_DENSE_EIG = 1024


@dataclass(frozen=True)
class Grid1D:
    """Uniform cell-centred partition of (a, b) into ``n`` cells."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"need a < b, got ({self.a}, {self.b})")
        if int(self.n) != self.n or self.n < 8:
            raise DomainError(f"need an integer n >= 8, got {self.n}")

    @property
    def h(self):
        return (self.b - self.a) / self.n

    @property
    def nodes(self):
        return self.a + (np.arange(self.n) + 0.5) * self.h

    def offset_in(self, outer):
        """Index of this grid's first node inside the aligned grid ``outer``, or None."""
        if not math.isclose(self.h, outer.h, rel_tol=1e-12):
            return None
        shift = (self.a - outer.a) / outer.h
        k = round(shift)
        if abs(shift - k) > 1e-9 or k < 0 or k + self.n > outer.n:
            return None
        return k


@dataclass(frozen=True, eq=False)
class DiscreteOperator:
    """Symmetric positive definite matrix ``A_h`` on the nodes of ``grid``."""

    matrix: np.ndarray
    grid: Grid1D
    order: FractionalOrder
    kind: str = "dirichlet"
    near_field: float = 0.0

    @property
    def n(self):
        return self.grid.n


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Ascending eigenvalues with orthonormal eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0
    exposed: int = field(default=0)

    def leading(self, k=None):
        """First ``k`` eigenpairs (all of them by default)."""
        k = self.exposed or len(self.eigenvalues) if k is None else k
        return self.eigenvalues[:k], self.eigenvectors[:, :k]

    def function_matrix(self, values):
        """``Q diag(values) Q^T`` for a vector of eigenvalue-function values."""
        q = self.eigenvectors
        return (q * values) @ q.T


@lru_cache(maxsize=64)
def _moment_sum(s, terms=4000):
    """Quadratic remainder of the far cells, summed over all k >= 1.

    sum_k int_{k-1/2}^{k+1/2} (k eta + eta^2/2)(k + eta)^{-1-2s} d eta with
    the k-sum closed by Euler-Maclaurin on the large-k expansion.
    """
    x, w = leggauss(30)
    k = np.arange(1, terms + 1, dtype=float)[:, None]
    eta = 0.5 * x[None, :]
    head = ((k * eta + 0.5 * eta * eta) * (k + eta) ** (-1.0 - 2.0 * s) * 0.5 * w).sum()
    # term_k ~ c k^{-p} for large k
    c = -(0.5 + 2.0 * s) / 12.0
    p = 1.0 + 2.0 * s
    big = float(terms)
    tail = c * (big ** (1.0 - p) / (p - 1.0) - 0.5 * big**-p + p * big ** (-p - 1.0) / 12.0)
    return float(head + tail)


def near_field_coefficient(order, h, stencil="corrected"):
    """Weight of the ``[-1, 2, -1]`` near-field stencil.

    ``"taylor"`` uses only the quadratic Taylor part of the singular cell.
    ``"corrected"`` also accounts for the quadratic error of the
    midpoint-type far cells, which restores second-order consistency; it
    vanishes at s = 1/2.
    """
    s = order.s
    c = frac_constant(order).value
    inner = 0.5 ** (2.0 - 2.0 * s) / (2.0 - 2.0 * s)
    if stencil == "taylor":
        return c * inner * h ** (-2.0 * s)
    if stencil == "corrected":
        return c * (inner + 2.0 * _moment_sum(s)) * h ** (-2.0 * s)
    raise DomainError(f"unknown stencil {stencil!r}")


def cell_weights(n, h, s):
    """Exact cell integrals ``w_k`` of ``|y|^{-1-2s}`` over ``[(k-1/2)h, (k+1/2)h]``; ``w_0 = 0``."""
    k = np.arange(1, n, dtype=float)
    w = np.zeros(n)
    w[1:] = (((k - 0.5) * h) ** (-2.0 * s) - ((k + 0.5) * h) ** (-2.0 * s)) / (2.0 * s)
    return w


def killing(grid, s):
    """Exact exterior mass ``kappa_i`` of the jump kernel at each node."""
    x = grid.nodes
    return ((x - grid.a) ** (-2.0 * s) + (grid.b - x) ** (-2.0 * s)) / (2.0 * s)


def assemble_dirichlet(grid, order, stencil="corrected"):
    """Assemble ``A_h`` for the restricted Dirichlet fractional Laplacian.

    Parameters
    ----------
    grid : Grid1D
    order : FractionalOrder
        Must have ``N == 1``.
    stencil : {"corrected", "taylor"}
        Near-field treatment, see :func:`near_field_coefficient`.

    Returns
    -------
    DiscreteOperator
    """
    if order.N != 1:
        raise DimensionError("matrices are assembled in one dimension only")
    n, h, s = grid.n, grid.h, order.s
    c = frac_constant(order).value
    w = cell_weights(n, h, s)
    idx = np.arange(n)
    lag = np.abs(idx[:, None] - idx[None, :])
    a = -c * w[lag]
    # row sum of the full-line stencil: (w_1 + .. + w_{i}) + (w_1 + .. + w_{n-1-i})
    cum = np.cumsum(w)
    diag = c * (cum[idx] + cum[n - 1 - idx] + killing(grid, s))
    coef = near_field_coefficient(order, h, stencil)
    # keep the neighbours nonpositive (matters only for small s)
    coef = max(coef, -c * w[1])
    a[idx, idx] = diag + 2.0 * coef
    a[idx[:-1], idx[1:]] -= coef
    a[idx[1:], idx[:-1]] -= coef
    a.setflags(write=False)
    return DiscreteOperator(matrix=a, grid=grid, order=order, near_field=coef)


def form_apply(op, u, v):
    """Discrete form ``E_h(u, v) = u^T A_h v h``."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != (op.n,) or v.shape != (op.n,):
        raise DimensionError(f"vectors must have shape ({op.n},)")
    return float(u @ (op.matrix @ v)) * op.grid.h


def _orient(q):
    # largest-magnitude entry of each column made positive
    pick = np.abs(q).argmax(axis=0)
    signs = np.sign(q[pick, np.arange(q.shape[1])])
    signs[signs == 0.0] = 1.0
    return q * signs


def spectrum(op, k=None, tol=1e-15, max_sweeps=50):
    """Full eigendecomposition of ``A_h`` by one-sided cyclic Jacobi.

    Parameters
    ----------
    op : DiscreteOperator
    k : int, optional
        Number of leading pairs exposed through ``SpectralDecomposition.leading``.

    Raises
    ------
    NonConvergenceError
        If the sweep budget is exhausted.
    """
    if op.n > _MAX_DENSE_EIG:
        raise DomainError(f"dense eigensolves are limited to n <= {_MAX_DENSE_EIG}")
    a = np.asarray(op.matrix)
    g, sweeps = _backend.jacobi_rows(a, tol, max_sweeps)
    q = g / np.linalg.norm(g, axis=1)[:, None]
    lam = np.einsum("ij,jk,ik->i", q, a, q)
    perm = np.argsort(lam, kind="stable")
    vecs = _orient(q[perm].T.copy())
    lam = lam[perm]
    lam.setflags(write=False)
    vecs.setflags(write=False)
    return SpectralDecomposition(eigenvalues=lam, eigenvectors=vecs, sweeps=sweeps,
                                 exposed=int(k) if k is not None else 0)


def semigroup_matrix(spec, z):
    """``e^{-z A}`` (complex if ``z`` is)."""
    z = complex(z)
    if z.real < 0.0:
        raise DomainError("need Re z >= 0")
    if z.imag == 0.0:
        return spec.function_matrix(np.exp(-z.real * spec.eigenvalues))
    return spec.function_matrix(np.exp(-z * spec.eigenvalues))


def semigroup_apply(spec, z, f):
    """``T(z) f = Q diag(exp(-z lam)) Q^T f`` for ``Re z >= 0``."""
    z = complex(z)
    if z.real < 0.0:
        raise DomainError("need Re z >= 0")
    f = np.asarray(f)
    if z == 0:
        return f.copy()
    q = spec.eigenvectors
    factor = np.exp(-z * spec.eigenvalues) if z.imag else np.exp(-z.real * spec.eigenvalues)
    return q @ (factor * (q.T @ f))


def resolvent_norm(spec, lam):
    """``||(lam + A)^{-1}||_2 = 1 / dist(lam, -spectrum)`` for the generator ``-A``."""
    dist = np.min(np.abs(complex(lam) + spec.eigenvalues))
    if dist < 1e-14:
        raise SingularResolventError(f"lambda = {lam} is on the spectrum of the generator")
    return float(1.0 / dist)


def kernel_matrix(spec, grid, z):
    """Kernel ``K(z, x_i, x_j) = [e^{-zA}]_{ij} / h``, symmetrised exactly."""
    z = complex(z)
    if not z.real > 0.0:
        raise DomainError("need Re z > 0")
    k = semigroup_matrix(spec, z) / grid.h
    return 0.5 * (k + k.T)


def conjugate_gradient(apply, b, rtol=1e-10, max_iter=None):
    """Unpreconditioned conjugate gradients for an SPD ``apply``.

    Returns ``(x, iterations)``; raises NonConvergenceError after ``max_iter``.
    """
    b = np.asarray(b, dtype=float)
    max_iter = 10 * b.size if max_iter is None else max_iter
    x = np.zeros_like(b)
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return x, 0
    r = b.copy()
    p = r.copy()
    rr = r @ r
    for it in range(1, max_iter + 1):
        ap = apply(p)
        alpha = rr / (p @ ap)
        x += alpha * p
        r -= alpha * ap
        rr_new = r @ r
        if math.sqrt(rr_new) <= rtol * bnorm:
            # guard against drift of the recursive residual
            true_r = b - apply(x)
            if np.linalg.norm(true_r) <= rtol * bnorm:
                return x, it
            r = true_r
            rr_new = r @ r
        p = r + (rr_new / rr) * p
        rr = rr_new
    raise NonConvergenceError(f"CG did not reach rtol={rtol} in {max_iter} iterations")


def solve_exterior_dirichlet(op, lam, f, rtol=1e-10):
    """Solve ``(A_h + lam I) u = f``, the discrete exterior Dirichlet problem."""
    if not lam >= 0.0:
        raise DomainError("need lambda >= 0")
    f = np.asarray(f, dtype=float)
    if f.shape != (op.n,):
        raise DimensionError(f"right-hand side must have shape ({op.n},)")
    a = op.matrix
    u, _ = conjugate_gradient(lambda v: a @ v + lam * v, f, rtol=rtol, max_iter=10 * op.n)
    return u


def weak_residual(op, lam, u, f, v):
    """``E_h(u, v) + lam (u, v)_h - (f, v)_h``."""
    h = op.grid.h
    return form_apply(op, u, v) + lam * float(u @ v) * h - float(f @ v) * h
