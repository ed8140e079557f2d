"""Trigonometric Poschl-Teller wells: parameters, spectra, bound states, grids.

Symmetric well (hbar = 1 throughout):

    V(y) = (alpha^2 / 2m) rho(rho-1) / cos^2(alpha y),   y in (-pi/2alpha, pi/2alpha)
    E_n  = (alpha^2 / 2m) (n + rho)^2

with natural coordinate xbar = sin(alpha y) in (-1, 1); the normalized bound
states are a (1-xbar^2)^(rho/2) envelope times Gegenbauer C_n^rho(xbar).

General well, singular at both walls:

    V(y) = (alpha^2 / 2m) [rho(rho-1)/cos^2(alpha y) + k(k-1)/sin^2(alpha y)],
           y in (0, pi/2alpha)
    E_n  = (alpha^2 / 2m) (2n + rho + k)^2

with natural coordinate u = sin^2(alpha y) in (0, 1); bound states are a
(1-u)^(rho/2) u^(k/2) envelope times Jacobi P_n^(k-1/2, rho-1/2)(1-2u).

All eigenfunction prefactors are assembled in log space; quadrature grids
carry the physical-measure weights so that sum(w * f(points)) approximates
the dy integral of f over the well.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .specfun import gegenbauer_all, jacobi_all, log_gamma

__all__ = [
    "SptParams",
    "PtParams",
    "SpatialGrid",
    "well_domain",
    "potential_value",
    "pt_potential_minimum",
    "spt_energy",
    "pt_energy",
    "spt_eigenfunction",
    "pt_eigenfunction",
    "eigenfunction_matrix",
    "gauss_grid",
    "uniform_grid",
]


@dataclass(frozen=True)
class SptParams:
    """Symmetric well: strength rho > 1, inverse length alpha > 0, mass > 0."""

    alpha: float
    rho: float
    mass: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise ValueError("alpha must be positive")
        if not self.rho > 1.0:
            raise ValueError("rho must exceed 1 for a bound-state well")
        if not self.mass > 0.0:
            raise ValueError("mass must be positive")


@dataclass(frozen=True)
class PtParams:
    """General well: wall strengths rho > 1 and k > 1, alpha > 0, mass > 0."""

    alpha: float
    rho: float
    k: float
    mass: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise ValueError("alpha must be positive")
        if not (self.rho > 1.0 and self.k > 1.0):
            raise ValueError("rho and k must both exceed 1")
        if not self.mass > 0.0:
            raise ValueError("mass must be positive")


@dataclass(frozen=True)
class SpatialGrid:
    """Sample points of the natural coordinate plus physical positions/weights.

    points   -- natural coordinate (xbar or u), strictly increasing, interior
    weights  -- quadrature weights for integrals in dy
    physical -- the corresponding y values
    """

    points: np.ndarray
    weights: np.ndarray
    physical: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        y = np.asarray(self.physical, dtype=float)
        if not (pts.shape == w.shape == y.shape) or pts.ndim != 1 or pts.size == 0:
            raise ValueError("points, weights and physical must be matching 1-d arrays")
        if np.any(np.diff(pts) <= 0.0):
            raise ValueError("grid points must be strictly increasing")
        if np.any(w <= 0.0):
            raise ValueError("quadrature weights must be positive")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "physical", y)

    @property
    def size(self) -> int:
        return self.points.size


def well_domain(params):
    """Open interval of y on which the well is defined."""
    half = np.pi / (2.0 * params.alpha)
    if isinstance(params, SptParams):
        return (-half, half)
    if isinstance(params, PtParams):
        return (0.0, half)
    raise TypeError("params must be SptParams or PtParams")


def potential_value(params, y):
    """V(y) for scalar or array y strictly inside the well."""
    ya = np.asarray(y, dtype=float)
    lo, hi = well_domain(params)
    if np.any(ya <= lo) or np.any(ya >= hi):
        raise ValueError("y must lie strictly inside the well domain")
    pref = params.alpha ** 2 / (2.0 * params.mass)
    arg = params.alpha * ya
    if isinstance(params, SptParams):
        out = pref * params.rho * (params.rho - 1.0) / np.cos(arg) ** 2
    else:
        out = pref * (params.rho * (params.rho - 1.0) / np.cos(arg) ** 2
                      + params.k * (params.k - 1.0) / np.sin(arg) ** 2)
    return float(out) if np.isscalar(y) else out


def pt_potential_minimum(params: PtParams) -> float:
    """Location of the general well's minimum: tan^4(alpha y) = k(k-1)/rho(rho-1)."""
    ratio = params.k * (params.k - 1.0) / (params.rho * (params.rho - 1.0))
    return float(np.arctan(ratio ** 0.25) / params.alpha)


def spt_energy(params: SptParams, n):
    """E_n = (alpha^2/2m)(n+rho)^2; n may be an int or an array of ints."""
    na = np.asarray(n)
    if np.any(na < 0):
        raise ValueError("quantum number n must be >= 0")
    e = params.alpha ** 2 / (2.0 * params.mass) * (na + params.rho) ** 2
    return float(e) if np.isscalar(n) else e


def pt_energy(params: PtParams, n):
    """E_n = (alpha^2/2m)(2n+rho+k)^2; n may be an int or an array of ints."""
    na = np.asarray(n)
    if np.any(na < 0):
        raise ValueError("quantum number n must be >= 0")
    e = params.alpha ** 2 / (2.0 * params.mass) * (2.0 * na + params.rho + params.k) ** 2
    return float(e) if np.isscalar(n) else e


@lru_cache(maxsize=8)
def _leggauss(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def gauss_grid(params, n: int = 800) -> SpatialGrid:
    """Gauss-Legendre grid on the natural coordinate, weighted for dy integrals."""
    if n < 2:
        raise ValueError("need at least 2 quadrature nodes")
    nodes, w = _leggauss(n)
    a = params.alpha
    if isinstance(params, SptParams):
        pts = nodes
        wy = w / (a * np.sqrt((1.0 - pts) * (1.0 + pts)))
        y = np.arcsin(pts) / a
    elif isinstance(params, PtParams):
        pts = 0.5 * (nodes + 1.0)
        wy = 0.5 * w / (2.0 * a * np.sqrt(pts * (1.0 - pts)))
        y = np.arcsin(np.sqrt(pts)) / a
    else:
        raise TypeError("params must be SptParams or PtParams")
    return SpatialGrid(points=pts, weights=wy, physical=y)


def uniform_grid(params, n: int = 512) -> SpatialGrid:
    """Midpoint grid, uniform in the natural coordinate (for rasters/plots)."""
    if n < 2:
        raise ValueError("need at least 2 grid points")
    a = params.alpha
    j = np.arange(n)
    if isinstance(params, SptParams):
        h = 2.0 / n
        pts = -1.0 + (j + 0.5) * h
        wy = h / (a * np.sqrt((1.0 - pts) * (1.0 + pts)))
        y = np.arcsin(pts) / a
    elif isinstance(params, PtParams):
        h = 1.0 / n
        pts = (j + 0.5) * h
        wy = h / (2.0 * a * np.sqrt(pts * (1.0 - pts)))
        y = np.arcsin(np.sqrt(pts)) / a
    else:
        raise TypeError("params must be SptParams or PtParams")
    return SpatialGrid(points=pts, weights=wy, physical=y)


def _spt_log_prefactor(params: SptParams, n: np.ndarray) -> np.ndarray:
    rho = params.rho
    return 0.5 * (np.log(params.alpha) + log_gamma(n + 1.0) + np.log(n + rho)
                  + log_gamma(rho) + log_gamma(2.0 * rho)
                  - 0.5 * np.log(np.pi) - log_gamma(rho + 0.5)
                  - log_gamma(n + 2.0 * rho))


def _pt_log_prefactor(params: PtParams, n: np.ndarray) -> np.ndarray:
    rho, k = params.rho, params.k
    return 0.5 * (np.log(2.0 * params.alpha) + np.log(k + rho + 2.0 * n)
                  + log_gamma(n + 1.0) + log_gamma(k + rho + n)
                  - log_gamma(k + n + 0.5) - log_gamma(rho + n + 0.5))


def eigenfunction_matrix(params, nmax: int, grid: SpatialGrid) -> np.ndarray:
    """Rows Psi_n on the grid for n = 0..nmax, from one recurrence sweep."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    n = np.arange(nmax + 1, dtype=float)
    pts = grid.points
    if isinstance(params, SptParams):
        logpref = _spt_log_prefactor(params, n)
        logenv = 0.5 * params.rho * np.log((1.0 - pts) * (1.0 + pts))
        poly = gegenbauer_all(nmax, params.rho, pts)
    elif isinstance(params, PtParams):
        logpref = _pt_log_prefactor(params, n)
        logenv = 0.5 * (params.rho * np.log1p(-pts) + params.k * np.log(pts))
        poly = jacobi_all(nmax, params.k - 0.5, params.rho - 0.5, 1.0 - 2.0 * pts)
    else:
        raise TypeError("params must be SptParams or PtParams")
    return np.exp(logpref[:, None] + logenv[None, :]) * poly


def spt_eigenfunction(params: SptParams, n: int, grid: SpatialGrid) -> np.ndarray:
    """Normalized bound state Psi_n of the symmetric well on the grid."""
    return eigenfunction_matrix(params, n, grid)[n]


def pt_eigenfunction(params: PtParams, n: int, grid: SpatialGrid) -> np.ndarray:
    """Normalized bound state Psi_n of the general well on the grid."""
    return eigenfunction_matrix(params, n, grid)[n]
