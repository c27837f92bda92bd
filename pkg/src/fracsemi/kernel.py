"""Fractional heat kernel P_s(z, r) by subordination, by Fourier inversion and in closed form.

The subordination integral is taken in ``w = log(tau)`` on panels anchored
at ``log(t**(1/s))``.  Rescaling ``t -> sigma*t`` shifts every node by the
same amount, so the self-similarity identity holds to rounding and not just
to quadrature accuracy.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, QuadratureError
from .quadrature import refine_until_stable
from .specfun import FractionalOrder, gamma, stable_density

_PANEL = 0.5
_ORDER = 10
_RTOL = 1e-7
_BUDGET = 2**20
_FOURIER_ORDER = 12
_FOURIER_DEPTH = 42.0
_FOURIER_BUDGET = 2**23

_erfc = np.frompyfunc(math.erfc, 1, 1)


@dataclass(frozen=True)
class KernelQuery:
    """Complex time ``z``, distance ``r`` and the fractional order."""

    z: complex
    r: float
    order: FractionalOrder

    def __post_init__(self):
        if not complex(self.z).real > 0.0:
            raise DomainError(f"kernel queries need Re z > 0, got {self.z}")
        if not self.r >= 0.0:
            raise DomainError(f"distance must be >= 0, got {self.r}")

    @property
    def t(self):
        """Real time; raises for a genuinely complex query."""
        z = complex(self.z)
        if z.imag != 0.0:
            raise DomainError("this route needs a real time")
        return z.real


def _w_edges(t, order):
    s, n = order.s, order.N
    centre = math.log(t) / s
    lo = ((1.0 - s) / s) * math.log(60.0) + 6.0
    hi = 40.0 / (s + 0.5 * n)
    k_lo = int(math.ceil(lo / _PANEL))
    k_hi = int(math.ceil(hi / _PANEL))
    return centre + _PANEL * np.arange(-k_lo, k_hi + 1, dtype=float)


def _upper_tail(t, order, tau_hi):
    # f ~ t s tau^{-1-s} / Gamma(1-s) and K_G ~ (4 pi tau)^{-N/2} far out
    s, n = order.s, order.N
    p = s + 0.5 * n
    return t * s / gamma(1.0 - s) * (4.0 * math.pi) ** (-0.5 * n) * tau_hi**-p / p


def _subordinate(t, order, gauss_part, tail=None, rtol=_RTOL, budget=_BUDGET):
    """Integrate ``f_{t,s}(tau) * gauss_part(tau)`` over tau in (0, inf).

    ``gauss_part(tau)`` returns an array with the tau axis last.
    """
    edges = _w_edges(t, order)
    cache = {}

    def integrand(w):
        key = (w.size, w[0], w[-1])
        if key not in cache:
            tau = np.exp(w)
            cache.clear()
            cache[key] = stable_density(t, order.s, tau) * tau
        return gauss_part(np.exp(w)) * cache[key]

    value = refine_until_stable(integrand, edges, _ORDER, rtol, atol=1e-300, budget=budget)
    if tail is not None:
        value = value + tail(math.exp(edges[-1]))
    return value


def subordinated_profile(t, r, order, rtol=_RTOL):
    """P_s(t, r) for an array of distances sharing one set of tau nodes."""
    if not t > 0.0:
        raise DomainError("time must be positive")
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0.0):
        raise DomainError("distances must be >= 0")
    n = order.N
    r2 = (r * r)[:, None]

    def gauss(tau):
        return (4.0 * math.pi * tau) ** (-0.5 * n) * np.exp(-r2 / (4.0 * tau))

    return _subordinate(t, order, gauss, lambda hi: _upper_tail(t, order, hi), rtol=rtol)


def heat_kernel_subordinated(q):
    """P_s(t, r) as the subordination integral of the Gaussian kernel.

    Parameters
    ----------
    q : KernelQuery
        Query with real time.

    Raises
    ------
    QuadratureError
        If level doubling exceeds the evaluation budget.
    """
    return float(subordinated_profile(q.t, q.r, q.order)[0])


def tail_mass(t, y, order, rtol=_RTOL):
    """One-dimensional tail mass ``int_y^inf P_s(t, u) du`` for ``y >= 0`` (N = 1)."""
    if order.N != 1:
        raise DimensionError("tail_mass is one-dimensional")
    y = np.atleast_1d(np.asarray(y, dtype=float))

    def gauss(tau):
        arg = y[:, None] / np.sqrt(4.0 * tau)
        return 0.5 * _erfc(arg).astype(float)

    # beyond the last panel the Gaussian tail mass is ~1/2, and int f = tail of the law
    s = order.s

    def tail(hi):
        return 0.5 * t / gamma(1.0 - s) * hi**-s

    return _subordinate(t, order, gauss, tail, rtol=rtol)


def cell_averaged_profile(t, h, count, order):
    """Averages of P_s(t, |y|) over cells ``[(k - 1/2) h, (k + 1/2) h]``, k = 0..count-1."""
    if not h > 0.0:
        raise DomainError("cell width must be positive")
    faces = (np.arange(count) + 0.5) * h
    tails = tail_mass(t, np.concatenate(([0.0], faces)), order)
    out = np.empty(count)
    out[0] = (tails[0] - tails[1]) * 2.0 / h
    out[1:] = (tails[1:-1] - tails[2:]) / h  # tails[k] is the mass beyond (k - 1/2) h
    return out


def _fourier_edges(z, r, s):
    """Graded panel edges for the Fourier integrand on (0, rho_max)."""
    re = z.real
    absz = abs(z)
    rho_max = (_FOURIER_DEPTH / re) ** (0.5 / s)
    scale = absz ** (-0.5 / s)
    rho = min(1e-10 * scale, 1e-3 * rho_max)
    edges = [0.0, rho]
    osc = math.pi / max(r, 1.0)
    while rho < rho_max:
        phase = 4.0 / (2.0 * s * absz * rho ** (2.0 * s - 1.0))
        width = min(osc, rho, phase)
        rho = min(rho + width, rho_max)
        edges.append(rho)
        if len(edges) > _FOURIER_BUDGET // _FOURIER_ORDER:
            raise QuadratureError("Fourier panel budget exhausted")
    return np.asarray(edges)


def fourier_profile(z, r, s, budget=_FOURIER_BUDGET):
    """P_s(z, r) for N = 1 by ``(1/pi) int_0^inf exp(-z rho^{2s}) cos(r rho) d rho``.

    For ``r >= 1`` the equivalent form
    ``(2 s z / (pi r)) int_0^inf rho^{2s-1} exp(-z rho^{2s}) sin(r rho) d rho`` is used.
    """
    z = complex(z)
    if not z.real > 0.0:
        raise DomainError("Re z must be positive")
    r = np.atleast_1d(np.asarray(r, dtype=float))
    edges = _fourier_edges(z, float(r.max()), s)

    far = r[:, None] >= 1.0
    safe_r = np.where(far, r[:, None], 1.0)

    def integrand(rho):
        # for r >= 1 one integration by parts trades cos for sin / r and
        # removes most of the cancellation in the oscillatory tail
        decay = np.exp(-z * rho ** (2.0 * s))
        near = decay * np.cos(r[:, None] * rho)
        parts = (2.0 * s * z / safe_r) * rho ** (2.0 * s - 1.0) * decay * np.sin(r[:, None] * rho)
        return np.where(far, parts, near)

    return refine_until_stable(integrand, edges, _FOURIER_ORDER, 1e-9, atol=1e-300,
                               budget=budget) / math.pi


def heat_kernel_fourier(q):
    """Complex-time kernel P_s(z, r) by Fourier inversion (N = 1 only)."""
    if q.order.N != 1:
        raise DimensionError("the Fourier route is one-dimensional")
    return complex(fourier_profile(q.z, q.r, q.order.s)[0])


def poisson_kernel_closed(t, r, N=1):
    """Closed form of P_{1/2}: Gamma((N+1)/2) pi^{-(N+1)/2} t / (t^2 + r^2)^{(N+1)/2}."""
    if not t > 0.0:
        raise DomainError("time must be positive")
    r = np.asarray(r, dtype=float)
    p = 0.5 * (N + 1)
    out = gamma(p) * math.pi**-p * t / (t * t + r * r) ** p
    return float(out) if out.ndim == 0 else out


def self_similar_rescale(q, sigma):
    """Map ``(t, r)`` to ``(sigma t, sigma^{1/2s} r)``.

    Returns
    -------
    (KernelQuery, float)
        The rescaled query and the factor ``sigma^{-N/2s}`` such that
        ``P(rescaled) = factor * P(q)``.
    """
    if not sigma > 0.0:
        raise DomainError("scale must be positive")
    s, n = q.order.s, q.order.N
    new = KernelQuery(z=q.t * sigma, r=q.r * sigma ** (0.5 / s), order=q.order)
    return new, sigma ** (-0.5 * n / s)
