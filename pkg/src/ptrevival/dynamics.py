"""Exact time evolution of the coherent states and their revival structure.

Everything rests on the spectrum being an exact quadratic in the quantum
number, E_n = quad*n^2 + lin*n + const:

    symmetric well: quad = c,  lin = 2 c rho,        const = c rho^2
    general well:   quad = 4c, lin = 4c(rho+k),      const = c (rho+k)^2

with c = alpha^2/2m.  The revival time is t_rev = 2 pi / quad (every phase
returns, up to a global factor), and the period of the linear part of the
phase, t_cl = 2 pi / lin, is the classical period that makes the sub-packet
decomposition at fractional times exact:

    chi(t) = e^{-i const t} sum_p a_p chi_cl(t + (p/l) t_cl),   t = (r/s) t_rev

where chi_cl evolves with the linear phases only and the a_p are the DFT
amplitudes of e^{-2 pi i n^2 r/s}.  The textbook estimate 2 pi / E'(nbar) is
also reported for comparison but does not satisfy the identity above.

Positions, times and energies are in the same units as the well parameters
(hbar = 1); public time-series and rasters are sampled in units of t_rev.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .coherent import CoefficientSet, Family
from .eigensystem import (PtParams, SpatialGrid, SptParams, eigenfunction_matrix,
                          pt_energy, spt_energy)
from .specfun import log_gamma

__all__ = [
    "WaveSample",
    "TimeSeries",
    "CarpetRaster",
    "RevivalTimes",
    "FractionalRevival",
    "InterferenceReport",
    "ClassicalParams",
    "TrajectoryDomainError",
    "energies",
    "basis_matrix",
    "mean_energy",
    "revival_time",
    "revival_times",
    "evolve",
    "autocorrelation",
    "carpet",
    "fractional_decomposition",
    "classical_wavepacket",
    "fractional_revival_field",
    "eighth_revival_interference",
    "classical_params",
    "classical_trajectory",
    "expectation_x_closed",
    "expectation_x_quadrature",
    "expectation_x_arcsin_quadrature",
]


class TrajectoryDomainError(ArithmeticError):
    """An inverse-trigonometric argument left its domain during evaluation."""


@dataclass(frozen=True)
class WaveSample:
    """Complex field values on a grid at one absolute time."""

    grid: SpatialGrid
    time: float
    values: np.ndarray = field(repr=False)

    def density(self) -> np.ndarray:
        v = self.values
        return (v * v.conj()).real


@dataclass(frozen=True)
class TimeSeries:
    """Values sampled at times given in units of the revival time."""

    times: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class CarpetRaster:
    """Probability density on a (time x position) raster.

    times are in units of the revival time, rows of density follow times;
    points/physical give the position axis in natural/physical coordinates.
    """

    points: np.ndarray
    physical: np.ndarray
    times: np.ndarray
    density: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class RevivalTimes:
    """t_rev plus the two readings of the classical period (see module docs)."""

    t_cl: float
    t_cl_derivative: float
    t_rev: float


@dataclass(frozen=True)
class FractionalRevival:
    """Sub-packet count l and DFT amplitudes a_p at fractional time (r/s) t_rev."""

    r: int
    s: int
    l: int
    amplitudes: np.ndarray

    def __post_init__(self):
        total = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(total - 1.0) > 1e-10:
            raise ValueError("amplitudes must carry unit total weight")


def _spectral_coeffs(params):
    """(quad, lin, const) of E_n = quad n^2 + lin n + const."""
    c = params.alpha ** 2 / (2.0 * params.mass)
    if isinstance(params, SptParams):
        return c, 2.0 * c * params.rho, c * params.rho ** 2
    if isinstance(params, PtParams):
        q = params.rho + params.k
        return 4.0 * c, 4.0 * c * q, c * q ** 2
    raise TypeError("params must be SptParams or PtParams")


def revival_time(params) -> float:
    """Full revival period t_rev = 2 pi / quad."""
    quad, _, _ = _spectral_coeffs(params)
    return 2.0 * math.pi / quad


def revival_times(params, nbar: float) -> RevivalTimes:
    """Characteristic times of a packet with mean level nbar."""
    quad, lin, _ = _spectral_coeffs(params)
    return RevivalTimes(t_cl=2.0 * math.pi / lin,
                        t_cl_derivative=2.0 * math.pi / (2.0 * quad * nbar + lin),
                        t_rev=2.0 * math.pi / quad)


def energies(cs: CoefficientSet) -> np.ndarray:
    """E_n for every retained level of the coefficient set."""
    n = np.arange(cs.coeffs.size)
    if cs.family is Family.PT_DOCS:
        return pt_energy(cs.params, n)
    return spt_energy(cs.params, n)


def basis_matrix(cs: CoefficientSet, grid: SpatialGrid) -> np.ndarray:
    """Eigenfunction rows for every retained level; reusable across times."""
    return eigenfunction_matrix(cs.params, cs.nmax, grid)


def mean_energy(cs: CoefficientSet) -> float:
    """<H> = sum |d_n|^2 E_n."""
    return float(np.sum(cs.coeffs ** 2 * energies(cs)))


def evolve(cs: CoefficientSet, grid: SpatialGrid, t: float,
           basis: np.ndarray | None = None) -> WaveSample:
    """Field sum(d_n e^{-i E_n t} Psi_n) on the grid at absolute time t."""
    if basis is None:
        basis = basis_matrix(cs, grid)
    phases = np.exp(-1j * energies(cs) * t)
    return WaveSample(grid=grid, time=float(t),
                      values=(cs.coeffs * phases) @ basis)


def autocorrelation(cs: CoefficientSet, times) -> TimeSeries:
    """Overlap series A(t) = sum |d_n|^2 e^{+i E_n t}, times in t_rev units.

    No grid is involved: the overlap collapses to the occupation sums by
    orthonormality of the bound states.
    """
    tau = np.asarray(times, dtype=float)
    t_abs = tau * revival_time(cs.params)
    a = np.exp(1j * np.outer(t_abs, energies(cs))) @ (cs.coeffs ** 2)
    return TimeSeries(times=tau, values=a)


def _worker_count() -> int:
    env = os.environ.get("PT_REVIVAL_THREADS")
    if env is not None:
        n = int(env)
        if n < 1:
            raise ValueError("PT_REVIVAL_THREADS must be a positive integer")
        return n
    return min(os.cpu_count() or 1, 4)


def carpet(cs: CoefficientSet, grid: SpatialGrid, times) -> CarpetRaster:
    """|chi(x, t)|^2 raster over the grid and the given times (t_rev units).

    Each row is an independent vector-matrix product, so the result is
    identical for any partition of rows across the worker threads (capped
    by the PT_REVIVAL_THREADS environment variable).
    """
    tau = np.asarray(times, dtype=float)
    if tau.ndim != 1 or tau.size == 0:
        raise ValueError("times must be a non-empty 1-d array")
    basis = basis_matrix(cs, grid)
    e = energies(cs)
    t_abs = tau * revival_time(cs.params)
    density = np.empty((tau.size, grid.size))

    def fill(rows):
        for i in rows:
            v = (cs.coeffs * np.exp(-1j * e * t_abs[i])) @ basis
            density[i] = (v * v.conj()).real

    workers = min(_worker_count(), tau.size)
    if workers == 1:
        fill(range(tau.size))
    else:
        chunks = np.array_split(np.arange(tau.size), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, chunks))
    return CarpetRaster(points=grid.points, physical=grid.physical,
                        times=tau, density=density)


def fractional_decomposition(r: int, s: int) -> FractionalRevival:
    """Sub-packet amplitudes at t = (r/s) t_rev.

    l = s/2 when 4 divides s, else l = s; the amplitudes are the inverse
    DFT of the quadratic phases, a_p = (1/l) sum_n e^{2 pi i (np/l - n^2 r/s)}.
    """
    if s < 1 or r < 0:
        raise ValueError("need s >= 1 and r >= 0")
    if math.gcd(r, s) != 1:
        raise ValueError("r/s must be in lowest terms")
    l = s // 2 if s % 4 == 0 else s
    n = np.arange(l)
    p = n[:, None]
    a = np.exp(2j * np.pi * (n * p / l - (n * n) * (r / s))).sum(axis=1) / l
    return FractionalRevival(r=r, s=s, l=l, amplitudes=a)


def classical_wavepacket(cs: CoefficientSet, grid: SpatialGrid, t: float,
                         t_cl: float | None = None,
                         basis: np.ndarray | None = None) -> WaveSample:
    """Packet evolved with linear phases only: sum(d_n e^{-2 pi i n t/t_cl} Psi_n).

    Defaults to the exact linear-phase period t_cl = 2 pi / lin; pass the
    derivative-based period to see how the estimate degrades.
    """
    if t_cl is None:
        _, lin, _ = _spectral_coeffs(cs.params)
        t_cl = 2.0 * math.pi / lin
    if basis is None:
        basis = basis_matrix(cs, grid)
    n = np.arange(cs.coeffs.size)
    phases = np.exp(-2j * np.pi * n * (t / t_cl))
    return WaveSample(grid=grid, time=float(t),
                      values=(cs.coeffs * phases) @ basis)


def fractional_revival_field(cs: CoefficientSet, grid: SpatialGrid, r: int, s: int,
                             t_cl: float | None = None,
                             basis: np.ndarray | None = None) -> WaveSample:
    """Sub-packet reconstruction of chi at t = (r/s) t_rev.

    With the default t_cl the identity is exact, including the global phase
    e^{-i const t} restored so the raw field (not just the density) matches
    evolve() at the same instant.
    """
    fr = fractional_decomposition(r, s)
    quad, lin, const = _spectral_coeffs(cs.params)
    t_frac = (r / s) * (2.0 * math.pi / quad)
    if t_cl is None:
        t_cl = 2.0 * math.pi / lin
    if basis is None:
        basis = basis_matrix(cs, grid)
    values = np.zeros(grid.size, dtype=complex)
    for p in range(fr.l):
        shifted = classical_wavepacket(cs, grid, t_frac + (p / fr.l) * t_cl,
                                       t_cl=t_cl, basis=basis)
        values += fr.amplitudes[p] * shifted.values
    values *= np.exp(-1j * const * t_frac)
    return WaveSample(grid=grid, time=t_frac, values=values)


@dataclass(frozen=True)
class InterferenceReport:
    """Decomposition of the density at t_rev/8 into four sub-packets.

    Pair keys are 1-based labels (i, j) of the sub-packets chi_cl at shifts
    (p-1)/4 of the classical period; interference[(i, j)] is the pointwise
    real cross term 2 Re[a_i conj(a_j) chi_i conj(chi_j)] and l1[(i, j)] its
    integrated magnitude.  ranking sorts the pairs by l1, largest first.
    """

    grid: SpatialGrid
    amplitudes: np.ndarray
    sub_densities: np.ndarray
    interference: dict
    l1: dict
    ranking: list
    density: np.ndarray


def eighth_revival_interference(cs: CoefficientSet, grid: SpatialGrid) -> InterferenceReport:
    """Sub-packet interference analysis of the packet at t = t_rev/8."""
    fr = fractional_decomposition(1, 8)
    quad, lin, _ = _spectral_coeffs(cs.params)
    t_frac = (2.0 * math.pi / quad) / 8.0
    t_cl = 2.0 * math.pi / lin
    basis = basis_matrix(cs, grid)
    fields = [classical_wavepacket(cs, grid, t_frac + (p / fr.l) * t_cl,
                                   t_cl=t_cl, basis=basis).values
              for p in range(fr.l)]
    a = fr.amplitudes
    sub = np.array([(f * f.conj()).real for f in fields])
    interference = {}
    l1 = {}
    density = np.einsum("p,px->x", np.abs(a) ** 2, sub)
    for i in range(fr.l):
        for j in range(i + 1, fr.l):
            term = 2.0 * (a[i] * np.conj(a[j]) * fields[i] * np.conj(fields[j])).real
            interference[(i + 1, j + 1)] = term
            l1[(i + 1, j + 1)] = float(np.sum(grid.weights * np.abs(term)))
            density = density + term
    ranking = sorted(l1, key=l1.get, reverse=True)
    return InterferenceReport(grid=grid, amplitudes=a, sub_densities=sub,
                              interference=interference, l1=l1, ranking=ranking,
                              density=density)


@dataclass(frozen=True)
class ClassicalParams:
    """Inputs of the classical bounce in the general well.

    a is the length scale of the arccos orbit shape, e_c the classical
    energy, v0 = alpha^2/m the strength unit, alpha1/beta1 the wall
    strengths in units of e_c and delta the squared half-width of the
    cos(2 alpha y) oscillation.
    """

    a: float
    e_c: float
    v0: float
    alpha1: float
    beta1: float
    delta: float


def classical_params(params: PtParams, e_c: float,
                     a: float | None = None) -> ClassicalParams:
    """Classical-orbit constants for energy e_c in the general well.

    Requires e_c above the potential minimum
    (v0/2)(sqrt(rho(rho-1)) + sqrt(k(k-1)))^2, which is exactly the
    condition delta > 0.  a defaults to 1/(2 alpha), which makes the arccos
    form the exact solution of the classical equation of motion.
    """
    if a is None:
        a = 1.0 / (2.0 * params.alpha)
    if not a > 0.0:
        raise ValueError("length scale a must be positive")
    if not e_c > 0.0:
        raise ValueError("classical energy must be positive")
    v0 = params.alpha ** 2 / params.mass
    sr = math.sqrt(params.rho * (params.rho - 1.0))
    sk = math.sqrt(params.k * (params.k - 1.0))
    floor = 0.5 * v0 * (sr + sk) ** 2
    if not e_c > floor:
        raise ValueError(
            f"classical energy {e_c} must exceed the potential minimum {floor}")
    alpha1 = v0 * params.rho * (params.rho - 1.0) / e_c
    beta1 = v0 * params.k * (params.k - 1.0) / e_c
    sa, sb = math.sqrt(alpha1), math.sqrt(beta1)
    delta = (1.0 - 0.5 * (sa + sb) ** 2) * (1.0 - 0.5 * (sa - sb) ** 2)
    return ClassicalParams(a=a, e_c=e_c, v0=v0, alpha1=alpha1, beta1=beta1,
                           delta=delta)


def classical_trajectory(cp: ClassicalParams, params: PtParams, t):
    """Classical bounce x(t) = a arccos[(alpha1-beta1)/2 + sqrt(delta) cos(w t)].

    w = sqrt(2 e_c / m)/a; the motion starts at the inner turning point.
    Raises TrajectoryDomainError if the arccos argument leaves [-1, 1]
    beyond rounding slack (inconsistent ClassicalParams).
    """
    ta = np.asarray(t, dtype=float)
    w = math.sqrt(2.0 * cp.e_c / params.mass) / cp.a
    arg = 0.5 * (cp.alpha1 - cp.beta1) + math.sqrt(cp.delta) * np.cos(w * ta)
    breach = float(np.max(np.abs(arg))) - 1.0
    if breach > 1e-12:
        raise TrajectoryDomainError(
            f"arccos argument exceeds 1 by {breach:.3e}; parameters inconsistent")
    x = cp.a * np.arccos(np.clip(arg, -1.0, 1.0))
    return float(x) if np.isscalar(t) else x


def _xpect_series_terms(cs: CoefficientSet):
    """Log-space assembly of the cosine-series terms of <cos 2 alpha y>(t).

    Returns (amp, omega, const_sum): the time dependence is
    sum(2 amp_n cos(omega_n t)) + const_sum, up to one overall normalization
    fixed against quadrature at t = 0.
    """
    p = cs.params
    rho, k, beta = p.rho, p.k, cs.coherence_param
    q = rho + k
    n = np.arange(cs.coeffs.size, dtype=float)
    m = 2.0 * n + q
    if beta == 0.0:
        amp = np.zeros(1)
        la = np.array([-math.inf])
    else:
        la = ((2.0 * n + 1.0) * math.log(abs(beta)) + math.log(2.0)
              + log_gamma(rho + n + 1.5) + log_gamma(k + n + 1.5)
              - log_gamma(q + n) - log_gamma(n + 1.0)
              - np.log(m * (m + 1.0) * (m + 2.0)))
        amp = -np.sign(beta) * np.exp(la)
    if k == rho:
        const = np.zeros_like(n)
    else:
        lc = (2.0 * n * (0.0 if beta == 0.0 else math.log(abs(beta)))
              + log_gamma(rho + n + 0.5) + log_gamma(k + n + 0.5)
              + math.log(abs((q - 1.0) * (k - rho)))
              - log_gamma(q + n) - log_gamma(n + 1.0)
              - np.log(m * (m - 1.0) * (m + 1.0)))
        const = -math.copysign(1.0, (q - 1.0) * (k - rho)) * np.exp(lc)
        if beta == 0.0:
            const[1:] = 0.0
    omega = 2.0 * p.alpha ** 2 * (m + 1.0) / p.mass
    return amp, omega, const.sum()


def expectation_x_closed(cs: CoefficientSet, t, grid: SpatialGrid | None = None):
    """Mean position of a general-well packet from the closed cosine series.

    Computes x(t) = (1/alpha) arcsin sqrt((1-z)/2) where z = <cos 2 alpha y>
    is a finite cosine series over the retained levels; the overall series
    normalization is pinned by one quadrature evaluation of z at t = 0.
    Raises TrajectoryDomainError if roundoff pushes the arcsin argument
    outside [0, 1].
    """
    if cs.family is not Family.PT_DOCS:
        raise ValueError("closed-form mean position requires a general-well packet")
    from .eigensystem import gauss_grid  # local: default grid only on demand
    if grid is None:
        grid = gauss_grid(cs.params)
    amp, omega, const_sum = _xpect_series_terms(cs)

    w0 = evolve(cs, grid, 0.0)
    z0 = float(np.sum(grid.weights * np.cos(2.0 * cs.params.alpha * grid.physical)
                      * w0.density()))
    sigma0 = 2.0 * amp.sum() + const_sum
    scale = 1.0 if abs(sigma0) < 1e-300 else z0 / sigma0

    ta = np.asarray(t, dtype=float)
    z = scale * (2.0 * np.cos(np.multiply.outer(ta, omega)) @ amp + const_sum)
    arg = 0.5 * (1.0 - z)
    breach = max(float(np.max(arg)) - 1.0, -float(np.min(arg)))
    if breach > 1e-12:
        raise TrajectoryDomainError(
            f"arcsin argument leaves [0, 1] by {breach:.3e}")
    x = np.arcsin(np.sqrt(np.clip(arg, 0.0, 1.0))) / cs.params.alpha
    return float(x) if np.isscalar(t) else x


def expectation_x_quadrature(cs: CoefficientSet, grid: SpatialGrid, t,
                             basis: np.ndarray | None = None):
    """Literal mean position int y |chi|^2 dy at absolute time(s) t."""
    if basis is None:
        basis = basis_matrix(cs, grid)
    ta = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(ta.shape)
    for i, ti in enumerate(ta):
        w = evolve(cs, grid, ti, basis=basis)
        out[i] = float(np.sum(grid.weights * grid.physical * w.density()))
    return float(out[0]) if np.isscalar(t) else out


def expectation_x_arcsin_quadrature(cs: CoefficientSet, grid: SpatialGrid, t,
                                    basis: np.ndarray | None = None):
    """The closed form's functional, by quadrature: (1/alpha) arcsin sqrt((1-z)/2).

    z = int cos(2 alpha y) |chi|^2 dy.  Independent of the cosine series, so
    it serves as an oracle for expectation_x_closed.
    """
    if basis is None:
        basis = basis_matrix(cs, grid)
    a = cs.params.alpha
    cosy = np.cos(2.0 * a * grid.physical)
    ta = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(ta.shape)
    for i, ti in enumerate(ta):
        w = evolve(cs, grid, ti, basis=basis)
        z = float(np.sum(grid.weights * cosy * w.density()))
        arg = np.clip(0.5 * (1.0 - z), 0.0, 1.0)
        out[i] = math.asin(math.sqrt(arg)) / a
    return float(out[0]) if np.isscalar(t) else out
