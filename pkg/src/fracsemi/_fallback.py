"""Pure NumPy implementations of the hot kernels.

These mirror ``_core.pyx`` algorithm for algorithm.  They are selected by
``fracsemi._backend`` when the compiled extension is unavailable, or when
``FRACSEMI_PURE_PYTHON=1`` is set.
"""
import math

import numpy as np

from .errors import NonConvergenceError
from .quadrature import leggauss

# Taylor coefficients of log(sin x / x) in powers of x**2
LOGSINC_COEF = (
    -0.16666666666666666, -0.005555555555555556, -0.0003527336860670194,
    -2.6455026455026456e-05, -2.1377799155576935e-06, -1.803670234005331e-07,
    -1.5661391322766983e-08, -1.3884130493737299e-09, -1.2504359176004997e-10,
    -1.1402575602296091e-11, -1.0502923908637557e-12, -9.754877841593701e-14,
)
_SERIES_SWITCH = 0.5   # t * tau**-s at or below which the power series is used
_SERIES_TERMS = 200
_CUTOFF = 46.0         # e-folds below the peak at which the integrand is dead
_SPREAD = 3.0          # max change of the log-integrand across one 16-node panel
_MAX_PANELS = 100_000


def _logsinc(x, sx):
    if x < 0.5:
        x2 = x * x
        acc = 0.0
        for c in reversed(LOGSINC_COEF):
            acc = acc * x2 + c
        return acc * x2
    return math.log(sx / x)


def _dlogsinc(x, sx, cx):
    if x < 0.5:
        x2 = x * x
        acc = 0.0
        for k in range(len(LOGSINC_COEF), 0, -1):
            acc = acc * x2 + 2 * k * LOGSINC_COEF[k - 1]
        return acc * x
    return cx / sx - 1.0 / x


def _shape(theta, psi, s):
    """``log A(theta) - log A(0)`` and its theta-derivative; ``psi = pi - theta``."""
    sin_t = math.sin(theta) if theta <= 0.5 * math.pi else math.sin(psi)
    cos_t = math.cos(theta) if theta <= 0.5 * math.pi else -math.cos(psi)
    a, b = s * theta, (1.0 - s) * theta
    sa, ca, sb, cb = math.sin(a), math.cos(a), math.sin(b), math.cos(b)
    r = s / (1.0 - s)
    d = r * _logsinc(a, sa) + _logsinc(b, sb) - _logsinc(theta, sin_t) / (1.0 - s)
    slope = (r * s * _dlogsinc(a, sa, ca) + (1.0 - s) * _dlogsinc(b, sb, cb)
             - _dlogsinc(theta, sin_t, cos_t) / (1.0 - s))
    return d, slope


def _point(theta, psi, s, b0, log_b0):
    """Log-integrand ``log b - (b - b0)``, its slope and ``b`` at one angle."""
    d, slope = _shape(theta, psi, s)
    if log_b0 + d > 700.0:
        return -math.inf, math.inf, math.inf
    excess = b0 * math.expm1(d)
    b = b0 + excess
    return math.log(b) - excess, slope * (1.0 - b), b


def _walk(s, b0, lower):
    """Panel edges in theta (lower half) or psi = pi - theta (upper half)."""
    log_b0 = math.log(b0)
    peak = log_b0 if b0 >= 1.0 else b0 - 1.0
    if lower:
        pos, edges = 0.0, [0.0]
        slope0 = 0.0
    else:
        pos = 0.5 * math.pi
        edges = [pos]
        slope0 = _point(0.5 * math.pi, 0.5 * math.pi, s, b0, log_b0)[1]
    for _ in range(_MAX_PANELS):
        if lower:
            step = min(0.5 * math.pi - pos, 0.25)
        else:
            step = min(0.5 * pos, 0.25)
        while True:
            nxt = pos + step if lower else pos - step
            theta, psi = (nxt, math.pi - nxt) if lower else (math.pi - nxt, nxt)
            value, slope1, b1 = _point(theta, psi, s, b0, log_b0)
            if max(abs(slope0), abs(slope1)) * step <= _SPREAD:
                break
            step *= 0.5
        pos, slope0 = nxt, slope1
        edges.append(pos)
        if (value < peak - _CUTOFF and b1 > 1.0) or (lower and pos >= 0.5 * math.pi):
            return np.array(edges)
    raise NonConvergenceError("stable-density panel walk did not terminate")


def _shape_array(theta, psi, s):
    def logsinc(x, sx):
        x2 = x * x
        acc = np.zeros_like(x)
        for c in reversed(LOGSINC_COEF):
            acc = acc * x2 + c
        small = x < 0.5
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(small, acc * x2, np.log(sx / x))

    sin_t = np.where(theta <= 0.5 * math.pi, np.sin(theta), np.sin(psi))
    a, b = s * theta, (1.0 - s) * theta
    r = s / (1.0 - s)
    return r * logsinc(a, np.sin(a)) + logsinc(b, np.sin(b)) - logsinc(theta, sin_t) / (1.0 - s)


def _series(tau, t, s):
    z = t * tau**-s
    total = 0.0
    for k in range(1, _SERIES_TERMS + 1):
        mag = math.exp(math.lgamma(k * s + 1.0) - math.lgamma(k + 1.0) + k * math.log(z))
        total += (-1.0) ** (k + 1) * mag * math.sin(math.pi * k * s)
        if mag <= 1e-17 * abs(total):
            break
    return total / (math.pi * tau)


def _density_one(tau, t, s, gx, gw):
    log_z = math.log(t) - s * math.log(tau)
    if log_z <= math.log(_SERIES_SWITCH):
        return _series(tau, t, s)
    log_b0 = log_z / (1.0 - s) + (s / (1.0 - s)) * math.log(s) + math.log(1.0 - s)
    if log_b0 > 700.0:
        return 0.0
    b0 = math.exp(log_b0)
    total = 0.0
    for lower in (True, False):
        edges = _walk(s, b0, lower)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * np.abs(edges[1:] - edges[:-1])
        nodes = (mid[:, None] + half[:, None] * gx).ravel()
        w = (half[:, None] * gw).ravel()
        theta, psi = (nodes, math.pi - nodes) if lower else (math.pi - nodes, nodes)
        d = _shape_array(theta, psi, s)
        with np.errstate(over="ignore", invalid="ignore"):
            excess = b0 * np.expm1(np.minimum(d, 700.0 - log_b0))
            f = np.where(log_b0 + d > 700.0, 0.0, (b0 + excess) * np.exp(-excess))
        total += float(np.dot(w, f))
    if total <= 0.0:
        return 0.0
    return s / ((1.0 - s) * math.pi * tau) * math.exp(math.log(total) - b0)


def stable_density_integral(tau, t, s):
    """One-sided s-stable density with Laplace transform exp(-t*lam**s).

    With ``K = (t / tau**s)**(1/(1-s))`` and
    ``A(theta) = sin(s theta)**(s/(1-s)) sin((1-s) theta) / sin(theta)**(1/(1-s))``
    the density is ``s / ((1-s) pi tau) * int_0^pi b exp(-b) dtheta`` with
    ``b = K A(theta)``.  The integrand is positive, so there is no
    cancellation in either tail.  Panels are placed by walking from both
    ends of ``(0, pi)`` toward the middle, bounding the change of the
    log-integrand per panel.  For ``t tau**-s <= 1/2`` the convergent
    power series in ``t tau**-s`` is summed instead.
    """
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    gx, gw = leggauss(16)
    out = np.empty_like(tau)
    for k, tk in enumerate(tau):
        out[k] = _density_one(float(tk), t, s, gx, gw)
    return out


def _round_robin(m):
    """Round-robin tournament pairings of 0..m-1 (m even): m-1 rounds."""
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        half = m // 2
        rounds.append((np.array(players[:half]), np.array(players[half:][::-1])))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_rows(a, tol=1e-15, max_sweeps=50):
    """One-sided cyclic Jacobi orthogonalisation of the rows of ``a``.

    Returns the rotated matrix ``g`` (rows mutually orthogonal to ``tol``)
    and the number of sweeps used.  Rotations are applied in round-robin
    order so that each round is a single vectorised update.
    """
    g = np.array(a, dtype=float, copy=True)
    n = g.shape[0]
    m = n + (n % 2)
    if m != n:
        g = np.vstack([g, np.zeros((1, g.shape[1]))])
    rounds = _round_robin(m)
    for sweep in range(1, max_sweeps + 1):
        rotated = 0
        norms = np.einsum("ij,ij->i", g, g)
        for p, q in rounds:
            gp, gq = g[p], g[q]
            alpha, beta = norms[p], norms[q]
            gamma = np.einsum("ij,ij->i", gp, gq)
            active = np.abs(gamma) > tol * np.sqrt(alpha * beta)
            if not active.any():
                continue
            p, q = p[active], q[active]
            gp, gq = gp[active], gq[active]
            alpha, beta, gamma = alpha[active], beta[active], gamma[active]
            zeta = (beta - alpha) / (2.0 * gamma)
            tan = np.where(zeta >= 0.0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            cos = 1.0 / np.sqrt(1.0 + tan * tan)
            sin = cos * tan
            g[p] = cos[:, None] * gp - sin[:, None] * gq
            g[q] = sin[:, None] * gp + cos[:, None] * gq
            norms[p] = alpha - tan * gamma
            norms[q] = beta + tan * gamma
            rotated += p.size
        if rotated == 0:
            return g[:n], sweep
    raise NonConvergenceError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")
