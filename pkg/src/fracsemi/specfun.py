"""Scalar special functions and closed-form densities."""
import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError

# Lanczos approximation, g = 7, nine coefficients
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class FractionalOrder:
    """Exponent ``s`` of the fractional Laplacian together with the dimension ``N``."""

    s: float
    N: int = 1

    def __post_init__(self):
        if not (0.0 < self.s < 1.0):
            raise DomainError(f"s must lie in (0, 1), got {self.s}")
        if self.N not in (1, 2, 3):
            raise DomainError(f"N must be 1, 2 or 3, got {self.N}")

    @property
    def constant(self):
        return frac_constant(self).value

    @property
    def ultracontractive_exponent(self):
        """N / (2s), the decay rate of sup-norm bounds in time."""
        return self.N / (2.0 * self.s)


@dataclass(frozen=True)
class NormalizationConstant:
    value: float
    order: FractionalOrder


def gamma(x):
    """Gamma function for positive real arguments (scalar or array).

    Uses the Lanczos approximation for x >= 0.5 and the recurrence
    Gamma(x) = Gamma(x + 1) / x below that.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0.0)):
        raise DomainError("gamma is only defined here for x > 0")
    small = arr < 0.5
    z = np.where(small, arr + 1.0, arr) - 1.0
    acc = np.full_like(z, _LANCZOS_COEF[0])
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc = acc + c / (z + i)
    t = z + _LANCZOS_G + 0.5
    out = _SQRT_2PI * t ** (z + 0.5) * np.exp(-t) * acc
    out = np.where(small, out / arr, out)
    return float(out) if out.ndim == 0 else out


def frac_constant(order):
    """Normalisation constant C_{N,s} of the singular-integral fractional Laplacian."""
    s, n = order.s, order.N
    value = s * 4.0**s * gamma(0.5 * (2.0 * s + n)) / (math.pi ** (0.5 * n) * gamma(1.0 - s))
    return NormalizationConstant(value=value, order=order)


def gaussian_kernel(t, r, N=1):
    """Heat kernel of the Laplacian, (4 pi t)^{-N/2} exp(-r^2 / 4t)."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(~(t_arr > 0.0)):
        raise DomainError("gaussian_kernel requires t > 0")
    r = np.asarray(r, dtype=float)
    out = (4.0 * math.pi * t_arr) ** (-0.5 * N) * np.exp(-(r * r) / (4.0 * t_arr))
    return float(out) if out.ndim == 0 else out


def stable_density_half(t, tau):
    """Closed form of the density at s = 1/2: t tau^{-3/2} exp(-t^2/4tau) / (2 sqrt(pi))."""
    tau = np.asarray(tau, dtype=float)
    return t * tau**-1.5 * np.exp(-(t * t) / (4.0 * tau)) / (2.0 * math.sqrt(math.pi))


def stable_density(t, s, tau, method="auto"):
    """Density f_{t,s}(tau) of the one-sided s-stable law with Laplace transform exp(-t lam^s).

    Parameters
    ----------
    t : float
        Time, > 0.
    s : float
        Stability index in (0, 1).
    tau : float or array_like
        Points > 0.
    method : {"auto", "closed", "integral"}
        ``auto`` uses the closed form at s = 1/2 and the contour integral
        otherwise.  ``integral`` forces the contour integral (useful to
        validate it against the closed form).
    """
    if not t > 0.0:
        raise DomainError("stable_density requires t > 0")
    if not (0.0 < s < 1.0):
        raise DomainError(f"s must lie in (0, 1), got {s}")
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(~(tau_arr > 0.0)):
        raise DomainError("stable_density requires tau > 0")
    if method == "closed" and s != 0.5:
        raise DomainError("closed form is only available at s = 1/2")
    if method == "closed" or (method == "auto" and s == 0.5):
        out = stable_density_half(t, tau_arr)
    else:
        out = _backend.stable_density_integral(tau_arr.ravel(), t, s).reshape(tau_arr.shape)
    return float(out) if out.ndim == 0 else out
