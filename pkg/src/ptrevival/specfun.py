"""Special functions evaluated stably at fixed double precision.

The bound-state expansions downstream need Gegenbauer and Jacobi polynomials
up to moderate degree (n of order a few hundred at most) together with ratios
of gamma functions whose individual factors overflow a double long before the
ratios do.  Polynomials are evaluated by forward three-term recurrence, which
is stable on the support interval; gamma ratios are assembled in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = [
    "LogWeight",
    "log_gamma",
    "gegenbauer",
    "gegenbauer_all",
    "jacobi",
    "jacobi_all",
]


def log_gamma(x):
    """ln Gamma(x) for x > 0, elementwise on arrays.

    Thin wrapper over scipy's gammaln with an explicit positivity check,
    so callers get a clear error instead of the reflection-formula branch.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("log_gamma requires x > 0")
    out = gammaln(arr)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


@dataclass(frozen=True)
class LogWeight:
    """A real number carried as sign * exp(log_magnitude).

    sign is -1, 0 or +1; sign == 0 encodes an exact zero and the stored
    magnitude is then meaningless.  Products and quotients of gamma factors
    stay representable in this form for any parameter range of interest.
    """

    log_magnitude: float
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")

    @classmethod
    def from_value(cls, value: float) -> "LogWeight":
        if value == 0.0:
            return cls(-math.inf, 0)
        return cls(math.log(abs(value)), 1 if value > 0.0 else -1)

    @classmethod
    def from_log_gamma(cls, x: float) -> "LogWeight":
        """Gamma(x) as a LogWeight (x > 0, so the sign is +1)."""
        return cls(log_gamma(x), 1)

    def __mul__(self, other: "LogWeight") -> "LogWeight":
        if self.sign == 0 or other.sign == 0:
            return LogWeight(-math.inf, 0)
        return LogWeight(self.log_magnitude + other.log_magnitude,
                         self.sign * other.sign)

    def __truediv__(self, other: "LogWeight") -> "LogWeight":
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogWeight")
        if self.sign == 0:
            return LogWeight(-math.inf, 0)
        return LogWeight(self.log_magnitude - other.log_magnitude,
                         self.sign * other.sign)

    def sqrt(self) -> "LogWeight":
        if self.sign < 0:
            raise ValueError("sqrt of a negative LogWeight")
        if self.sign == 0:
            return LogWeight(-math.inf, 0)
        return LogWeight(0.5 * self.log_magnitude, 1)

    def scale_power(self, base: float, n: int) -> "LogWeight":
        """Multiply by base**n without leaving log space."""
        if base == 0.0:
            if n == 0:
                return self
            return LogWeight(-math.inf, 0)
        if self.sign == 0:
            return self
        sign = self.sign * (1 if base > 0.0 or n % 2 == 0 else -1)
        return LogWeight(self.log_magnitude + n * math.log(abs(base)), sign)

    @property
    def value(self) -> float:
        return 0.0 if self.sign == 0 else self.sign * math.exp(self.log_magnitude)


def gegenbauer_all(nmax: int, rho: float, x) -> np.ndarray:
    """Table of Gegenbauer polynomials C_n^rho(x) for n = 0..nmax.

    Forward recurrence n C_n = 2(n+rho-1) x C_{n-1} - (n+2rho-2) C_{n-2},
    seeded with C_0 = 1, C_1 = 2 rho x.  Returns shape (nmax+1,) + x.shape.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    if rho <= 0.0:
        raise ValueError("gegenbauer order rho must be positive")
    xa = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + xa.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 2.0 * rho * xa
    for n in range(2, nmax + 1):
        out[n] = (2.0 * (n + rho - 1.0) * xa * out[n - 1]
                  - (n + 2.0 * rho - 2.0) * out[n - 2]) / n
    return out


def gegenbauer(n: int, rho: float, x):
    """Gegenbauer polynomial C_n^rho(x); scalar x gives a float back."""
    table = gegenbauer_all(n, rho, x)
    last = table[n]
    return float(last) if last.ndim == 0 else last


def jacobi_all(nmax: int, a: float, b: float, x) -> np.ndarray:
    """Table of Jacobi polynomials P_n^(a,b)(x) for n = 0..nmax, a, b > -1.

    Standard forward three-term recurrence; stable for |x| <= 1.
    Returns shape (nmax+1,) + x.shape.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    if a <= -1.0 or b <= -1.0:
        raise ValueError("jacobi parameters must satisfy a > -1 and b > -1")
    xa = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + xa.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = (a + 1.0) + 0.5 * (a + b + 2.0) * (xa - 1.0)
    for n in range(2, nmax + 1):
        s = 2.0 * n + a + b
        c0 = 2.0 * n * (n + a + b) * (s - 2.0)
        c1 = (s - 1.0) * (s * (s - 2.0) * xa + a * a - b * b)
        c2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s
        out[n] = (c1 * out[n - 1] - c2 * out[n - 2]) / c0
    return out


def jacobi(n: int, a: float, b: float, x):
    """Jacobi polynomial P_n^(a,b)(x); scalar x gives a float back."""
    table = jacobi_all(n, a, b, x)
    last = table[n]
    return float(last) if last.ndim == 0 else last
