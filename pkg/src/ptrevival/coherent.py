"""Coherent-state expansion coefficients over the well's bound states.

Three families are supported, each a fixed superposition sum(d_n |n>) whose
coefficients come from gamma-function ratios:

  SPT_DOCS  -- displacement-type state of the symmetric well,
               d_n ~ (-beta)^n sqrt( Gamma(rho+n+1/2)^2
                                     / (Gamma(2rho+n) n! (n+rho)) )
  SPT_AOCS  -- annihilation-eigenstate of the symmetric well,
               d_n ~ gamma^n  sqrt( 1 / (Gamma(2rho+n) n! (n+rho)) )
  PT_DOCS   -- displacement-type state of the general well,
               d_n ~ (-beta)^n sqrt( Gamma(k+n+1/2) Gamma(rho+n+1/2)
                                     / ((k+rho+2n) n! Gamma(k+rho+n)) )

Magnitudes are generated in log space and exponentiated against the running
maximum.  The series is cut at the first index N past the distribution peak
where |d_N|/max < tol and a certified geometric majorant bounds the dropped
tail mass below tol^2 of the retained maximum; the retained vector is then
L2-normalized.  Displacement families require |beta| < 1 (the coefficient
ratio tends to |beta|, so beta outside the unit interval is not normalizable).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .eigensystem import PtParams, SptParams
from .specfun import log_gamma

__all__ = [
    "Family",
    "ConvergenceError",
    "CoefficientSet",
    "DistributionStats",
    "docs_coeffs",
    "aocs_coeffs",
    "pt_docs_coeffs",
    "distribution_stats",
    "recover_coherence_param",
]

_MAX_TERMS = 10_000
_BLOCK = 256


class Family(enum.Enum):
    """Which coherent-state construction a coefficient set came from."""

    SPT_DOCS = "spt-docs"
    SPT_AOCS = "spt-aocs"
    PT_DOCS = "pt-docs"


class ConvergenceError(RuntimeError):
    """The coefficient series could not be truncated within the term budget."""


@dataclass(frozen=True)
class CoefficientSet:
    """Normalized expansion coefficients d_0..d_N of one coherent state."""

    family: Family
    params: object
    coherence_param: float
    truncation_tol: float
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d array")
        norm = float(np.sum(c * c))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError("coeffs must be L2-normalized")
        object.__setattr__(self, "coeffs", c)

    @property
    def nmax(self) -> int:
        """Largest retained quantum number."""
        return self.coeffs.size - 1


@dataclass(frozen=True)
class DistributionStats:
    """Summary of the level-occupation distribution |d_n|^2."""

    nbar: float
    variance: float
    argmax: int
    support: tuple


def _log_abs_docs(n: np.ndarray, rho: float) -> np.ndarray:
    return 0.5 * (2.0 * log_gamma(rho + n + 0.5) - log_gamma(2.0 * rho + n)
                  - log_gamma(n + 1.0) - np.log(n + rho))


def _log_abs_aocs(n: np.ndarray, rho: float) -> np.ndarray:
    return -0.5 * (log_gamma(2.0 * rho + n) + log_gamma(n + 1.0) + np.log(n + rho))


def _log_abs_pt_docs(n: np.ndarray, rho: float, k: float) -> np.ndarray:
    return 0.5 * (log_gamma(k + n + 0.5) + log_gamma(rho + n + 0.5)
                  - np.log(k + rho + 2.0 * n) - log_gamma(n + 1.0)
                  - log_gamma(k + rho + n))


def _tail_ratio_bound(family: Family, params, cpar: float, n: int) -> float:
    """Upper bound on |d_{m+1}/d_m| valid for every m >= n.

    Each family's squared ratio is |cpar|^2 times a rational function that
    decreases monotonically to 1 (displacement types) or to 0 (annihilation
    type) once written as (D + c1)/(D + c2) with D = quadratic in m; the
    bound below is that function evaluated at m = n.
    """
    if family is Family.SPT_DOCS:
        rho = params.rho
        f = 1.0 + (rho - 0.5) ** 2 / ((n + 2.0 * rho) * (n + 1.0))
        return abs(cpar) * math.sqrt(f)
    if family is Family.SPT_AOCS:
        return abs(cpar) / (n + 1.0)
    rho, k = params.rho, params.k
    q = rho + k
    f = 1.0 + (k - 0.5) * (rho - 0.5) / ((n + 1.0) * (n + q))
    return abs(cpar) * math.sqrt(f)


def _build(family: Family, params, cpar: float, tol: float) -> CoefficientSet:
    if not 0.0 < tol < 1.0:
        raise ValueError("truncation tol must lie in (0, 1)")
    if family is not Family.SPT_AOCS and abs(cpar) >= 1.0:
        raise ConvergenceError(
            "displacement parameter must satisfy |beta| < 1 for a normalizable state")
    if cpar == 0.0:
        return CoefficientSet(family=family, params=params, coherence_param=cpar,
                              truncation_tol=tol, coeffs=np.array([1.0]))

    if family is Family.SPT_DOCS:
        logabs = lambda n: n * math.log(abs(cpar)) + _log_abs_docs(n, params.rho)
        alternating = cpar > 0.0
    elif family is Family.SPT_AOCS:
        logabs = lambda n: n * math.log(abs(cpar)) + _log_abs_aocs(n, params.rho)
        alternating = cpar < 0.0
    else:
        logabs = lambda n: (n * math.log(abs(cpar))
                            + _log_abs_pt_docs(n, params.rho, params.k))
        alternating = cpar > 0.0

    log_tol = math.log(tol)
    logs = np.empty(0)
    stop = None
    while logs.size < _MAX_TERMS and stop is None:
        n_new = np.arange(logs.size, min(logs.size + _BLOCK, _MAX_TERMS), dtype=float)
        logs = np.concatenate([logs, logabs(n_new)])
        logmax = logs.max()
        peak = int(np.argmax(logs))
        # candidate cut indices: past the peak, small enough, certified tail
        for idx in range(max(peak + 1, stop or 0), logs.size):
            if logs[idx] - logmax >= log_tol:
                continue
            r = _tail_ratio_bound(family, params, cpar, idx)
            if r >= 1.0:
                continue
            tail_log = 2.0 * (logs[idx] - logmax) + 2.0 * math.log(r) - math.log1p(-r * r)
            if tail_log < 2.0 * log_tol:
                stop = idx
                break
    if stop is None:
        raise ConvergenceError(
            f"coefficient series not converged within {_MAX_TERMS} terms")

    kept = logs[: stop + 1]
    coeffs = np.exp(kept - kept.max())
    if alternating:
        coeffs[1::2] *= -1.0
    coeffs /= math.sqrt(float(np.sum(coeffs * coeffs)))
    return CoefficientSet(family=family, params=params, coherence_param=cpar,
                          truncation_tol=tol, coeffs=coeffs)


def docs_coeffs(beta: float, params: SptParams, tol: float = 1e-8) -> CoefficientSet:
    """Displacement-type coherent state of the symmetric well."""
    if not isinstance(params, SptParams):
        raise TypeError("docs_coeffs needs SptParams")
    return _build(Family.SPT_DOCS, params, float(beta), tol)


def aocs_coeffs(gamma: float, params: SptParams, tol: float = 1e-8) -> CoefficientSet:
    """Annihilation-eigenstate coherent state of the symmetric well."""
    if not isinstance(params, SptParams):
        raise TypeError("aocs_coeffs needs SptParams")
    return _build(Family.SPT_AOCS, params, float(gamma), tol)


def pt_docs_coeffs(beta: float, params: PtParams, tol: float = 1e-8) -> CoefficientSet:
    """Displacement-type coherent state of the general well."""
    if not isinstance(params, PtParams):
        raise TypeError("pt_docs_coeffs needs PtParams")
    return _build(Family.PT_DOCS, params, float(beta), tol)


def distribution_stats(cs: CoefficientSet, support_cut: float = 1e-4) -> DistributionStats:
    """Mean, variance, mode and support of the occupation distribution.

    support is the index range where |d_n|^2 >= support_cut * max |d_n|^2.
    """
    p = cs.coeffs * cs.coeffs
    n = np.arange(p.size, dtype=float)
    nbar = float(np.sum(n * p))
    variance = float(np.sum((n - nbar) ** 2 * p))
    argmax = int(np.argmax(p))
    keep = np.nonzero(p >= support_cut * p[argmax])[0]
    return DistributionStats(nbar=nbar, variance=variance, argmax=argmax,
                             support=(int(keep[0]), int(keep[-1])))


_BUILDERS = {
    Family.SPT_DOCS: docs_coeffs,
    Family.SPT_AOCS: aocs_coeffs,
    Family.PT_DOCS: pt_docs_coeffs,
}


def recover_coherence_param(family: Family, params, target_argmax: int,
                            lo: float, hi: float, tol: float = 1e-8) -> float:
    """Coherence parameter whose occupation distribution peaks at target_argmax.

    The mode is a nondecreasing step function of the parameter on (lo, hi);
    both edges of the plateau where it equals target_argmax are located by
    bisection and the midpoint is returned.  Raises ValueError when no value
    in the bracket attains the target.
    """
    build = _BUILDERS[family]

    def mode(c):
        return distribution_stats(build(c, params, tol)).argmax

    if not 0.0 < lo < hi:
        raise ValueError("need 0 < lo < hi")
    m_lo, m_hi = mode(lo), mode(hi)
    if not m_lo <= target_argmax <= m_hi:
        raise ValueError("target argmax not bracketed by [lo, hi]")

    def edge(at_least):
        # smallest c in [lo, hi] with mode(c) >= at_least
        a, b = lo, hi
        for _ in range(60):
            mid = 0.5 * (a + b)
            if mode(mid) >= at_least:
                b = mid
            else:
                a = mid
        return b

    left = lo if m_lo == target_argmax else edge(target_argmax)
    right = hi if m_hi == target_argmax else edge(target_argmax + 1)
    c = 0.5 * (left + right)
    if mode(c) != target_argmax:
        raise ValueError("no parameter in the bracket attains the target argmax")
    return c
