import math

import numpy as np
import pytest
from mpmath import mp, mpf, factorial, gamma, sqrt as msqrt

import _golden as golden
from ptrevival.coherent import (CoefficientSet, ConvergenceError, Family,
                                aocs_coeffs, distribution_stats, docs_coeffs,
                                pt_docs_coeffs, recover_coherence_param)
from ptrevival.eigensystem import PtParams, SptParams

SPT10 = SptParams(alpha=2.0, rho=10.0)
SPT15 = SptParams(alpha=2.0, rho=15.0)
PT55 = PtParams(alpha=2.0, rho=5.0, k=5.0)
PT_ASYM = PtParams(alpha=2.0, rho=5.5, k=3.2)


# ----------------------------------------------------------- trivial inputs

def test_zero_parameter_is_ground_state():
    for cs in (docs_coeffs(0.0, SPT10), aocs_coeffs(0.0, SPT10),
               pt_docs_coeffs(0.0, PT55)):
        np.testing.assert_array_equal(cs.coeffs, [1.0])
        st = distribution_stats(cs)
        assert (st.nbar, st.variance, st.argmax, st.support) == (0.0, 0.0, 0, (0, 0))


# ------------------------------------------------------------ golden heads

def test_docs_golden_vector():
    cs = docs_coeffs(0.8, SPT10)
    np.testing.assert_allclose(cs.coeffs[:6], golden.docs08_head, rtol=1e-12)
    st = distribution_stats(cs)
    assert st.argmax == golden.docs08_argmax
    assert st.support == tuple(golden.docs08_support)
    assert math.isclose(st.nbar, golden.docs08_nbar, rel_tol=1e-10)
    assert math.isclose(st.variance, golden.docs08_var, rel_tol=1e-10)


def test_aocs_golden_vector():
    cs = aocs_coeffs(30.0, SPT10)
    np.testing.assert_allclose(cs.coeffs[:6], golden.aocs30_head, rtol=1e-12)
    st = distribution_stats(cs)
    assert st.argmax == golden.aocs30_argmax
    assert st.support == tuple(golden.aocs30_support)
    assert math.isclose(st.nbar, golden.aocs30_nbar, rel_tol=1e-10)
    assert math.isclose(st.variance, golden.aocs30_var, rel_tol=1e-10)


def test_pt_docs_golden_vector():
    cs = pt_docs_coeffs(0.8, PT55)
    np.testing.assert_allclose(cs.coeffs[:6], golden.ptdocs08_head, rtol=1e-12)
    st = distribution_stats(cs)
    assert st.argmax == golden.ptdocs08_argmax
    assert st.support == tuple(golden.ptdocs08_support)
    assert math.isclose(st.nbar, golden.ptdocs08_nbar, rel_tol=1e-10)
    assert math.isclose(st.variance, golden.ptdocs08_var, rel_tol=1e-10)


# ------------------------------------------------------------ sign pattern

def test_sign_patterns():
    d = docs_coeffs(0.8, SPT10).coeffs
    assert np.all(d[0::2] > 0.0) and np.all(d[1::2] < 0.0)
    d = docs_coeffs(-0.8, SPT10).coeffs
    assert np.all(d > 0.0)
    d = aocs_coeffs(30.0, SPT10).coeffs
    assert np.all(d > 0.0)
    d = aocs_coeffs(-30.0, SPT10).coeffs
    assert np.all(d[0::2] > 0.0) and np.all(d[1::2] < 0.0)
    d = pt_docs_coeffs(0.8, PT55).coeffs
    assert np.all(d[0::2] > 0.0) and np.all(d[1::2] < 0.0)


# --------------------------------------------------------- ratio identities

@pytest.mark.parametrize("rho", [1.5, 5.0, 10.0, 15.0])
@pytest.mark.parametrize("beta", [0.3, 0.8, -0.6])
def test_docs_ratio_identity(rho, beta):
    cs = docs_coeffs(beta, SptParams(alpha=2.0, rho=rho))
    d = cs.coeffs
    n = np.arange(min(100, d.size - 1), dtype=float)
    want = beta ** 2 * ((rho + n + 0.5) ** 2 * (n + rho)
                        / ((2 * rho + n) * (n + 1) * (n + rho + 1)))
    got = (d[1:n.size + 1] / d[:n.size]) ** 2
    np.testing.assert_allclose(got, want, rtol=1e-10)
    assert np.all(np.sign(d[1:n.size + 1] / d[:n.size]) == -np.sign(beta))


@pytest.mark.parametrize("rho", [1.5, 5.0, 10.0, 15.0])
@pytest.mark.parametrize("gam", [5.0, 30.0])
def test_aocs_ratio_identity(rho, gam):
    cs = aocs_coeffs(gam, SptParams(alpha=2.0, rho=rho))
    d = cs.coeffs
    n = np.arange(min(100, d.size - 1), dtype=float)
    want = gam ** 2 * ((n + rho) / ((2 * rho + n) * (n + 1) * (n + rho + 1)))
    got = (d[1:n.size + 1] / d[:n.size]) ** 2
    np.testing.assert_allclose(got, want, rtol=1e-10)


@pytest.mark.parametrize("params", [PT55, PT_ASYM,
                                    PtParams(alpha=2.0, rho=1.5, k=5.0),
                                    PtParams(alpha=2.0, rho=10.0, k=5.0),
                                    PtParams(alpha=2.0, rho=15.0, k=5.0)])
def test_pt_docs_ratio_identity(params):
    beta = 0.8
    cs = pt_docs_coeffs(beta, params)
    d = cs.coeffs
    rho, k = params.rho, params.k
    q = rho + k
    n = np.arange(min(100, d.size - 1), dtype=float)
    want = beta ** 2 * ((k + n + 0.5) * (rho + n + 0.5) * (q + 2 * n)
                        / ((q + 2 * n + 2) * (n + 1) * (q + n)))
    got = (d[1:n.size + 1] / d[:n.size]) ** 2
    np.testing.assert_allclose(got, want, rtol=1e-10)


# ---------------------------------------------------------------- truncation

def test_normalization():
    for cs in (docs_coeffs(0.8, SPT10), aocs_coeffs(30.0, SPT10),
               pt_docs_coeffs(0.95, PT_ASYM)):
        assert math.isclose(float(np.sum(cs.coeffs ** 2)), 1.0, rel_tol=1e-14)


def test_truncation_index_past_peak_and_small():
    cs = docs_coeffs(0.8, SPT10, tol=1e-8)
    p = cs.coeffs ** 2
    assert cs.nmax > int(np.argmax(p))
    assert abs(cs.coeffs[-1]) < 1e-8 * np.max(np.abs(cs.coeffs))


@pytest.mark.parametrize("family,cpar,params", [
    ("docs", 0.8, SPT10),
    ("docs", 0.95, SptParams(alpha=2.0, rho=2.0)),
    ("aocs", 30.0, SPT10),
    ("pt", 0.8, PT55),
])
def test_truncation_tail_mass_certified(family, cpar, params):
    # the dropped tail, summed to convergence with mpmath, must stay below
    # tol^2 relative to the peak coefficient
    build = {"docs": docs_coeffs, "aocs": aocs_coeffs, "pt": pt_docs_coeffs}[family]
    tol = 1e-8
    cs = build(cpar, params, tol=tol)
    mp.dps = 40

    if family == "docs":
        w = lambda n: (gamma(mpf(params.rho) + n + mpf("0.5")) ** 2
                       / (gamma(2 * mpf(params.rho) + n) * factorial(n)
                          * (n + mpf(params.rho))))
    elif family == "aocs":
        w = lambda n: 1 / (gamma(2 * mpf(params.rho) + n) * factorial(n)
                           * (n + mpf(params.rho)))
    else:
        q = mpf(params.rho) + mpf(params.k)
        w = lambda n: (gamma(mpf(params.k) + n + mpf("0.5"))
                       * gamma(mpf(params.rho) + n + mpf("0.5"))
                       / ((q + 2 * n) * factorial(n) * gamma(q + n)))

    raw = [abs(mpf(cpar)) ** (2 * n) * w(n) for n in range(cs.nmax + 800)]
    peak = max(raw)
    tail = sum(raw[cs.nmax + 1:])
    assert float(tail / peak) < tol ** 2
    # and the cut is not absurdly late: the kept range stays within a factor
    # of a few of the first index that meets the plain size test
    first_small = next(i for i in range(int(np.argmax(raw[:cs.nmax + 1])), len(raw))
                       if raw[i] / peak < mpf(tol) ** 2)
    assert cs.nmax <= 4 * first_small + 50


def test_truncation_tightens_with_tol():
    loose = docs_coeffs(0.8, SPT10, tol=1e-6)
    tight = docs_coeffs(0.8, SPT10, tol=1e-10)
    assert tight.nmax > loose.nmax
    np.testing.assert_allclose(tight.coeffs[:6], loose.coeffs[:6], rtol=1e-11)


def test_displacement_parameter_must_be_inside_unit_interval():
    with pytest.raises(ConvergenceError):
        docs_coeffs(1.0, SPT10)
    with pytest.raises(ConvergenceError):
        docs_coeffs(-1.3, SPT10)
    with pytest.raises(ConvergenceError):
        pt_docs_coeffs(1.0, PT55)
    # annihilation family has no such restriction
    assert aocs_coeffs(45.0, SPT10).nmax > 0


def test_tol_validation():
    with pytest.raises(ValueError):
        docs_coeffs(0.5, SPT10, tol=0.0)
    with pytest.raises(ValueError):
        docs_coeffs(0.5, SPT10, tol=1.0)


def test_family_type_mismatch_rejected():
    with pytest.raises(TypeError):
        docs_coeffs(0.5, PT55)
    with pytest.raises(TypeError):
        pt_docs_coeffs(0.5, SPT10)


def test_coefficient_set_requires_normalization():
    with pytest.raises(ValueError):
        CoefficientSet(family=Family.SPT_DOCS, params=SPT10, coherence_param=0.1,
                       truncation_tol=1e-8, coeffs=np.array([0.5, 0.5]))


# ------------------------------------------------------------ mode recovery

def test_recover_docs_mode_at_rho15():
    beta = recover_coherence_param(Family.SPT_DOCS, SPT15, 9, 0.5, 0.95)
    lo, hi = golden.recover15_docs_window
    assert lo < beta < hi
    assert distribution_stats(docs_coeffs(beta, SPT15)).argmax == 9


def test_recover_aocs_mode_at_rho15():
    gam = recover_coherence_param(Family.SPT_AOCS, SPT15, 9, 5.0, 50.0)
    lo, hi = golden.recover15_aocs_window
    assert lo < gam < hi
    assert distribution_stats(aocs_coeffs(gam, SPT15)).argmax == 9


def test_aocs_narrower_than_docs_at_matched_mode():
    beta = recover_coherence_param(Family.SPT_DOCS, SPT15, 9, 0.5, 0.95)
    gam = recover_coherence_param(Family.SPT_AOCS, SPT15, 9, 5.0, 50.0)
    var_d = distribution_stats(docs_coeffs(beta, SPT15)).variance
    var_a = distribution_stats(aocs_coeffs(gam, SPT15)).variance
    assert var_a < var_d


def test_recover_rejects_unbracketed_target():
    with pytest.raises(ValueError):
        recover_coherence_param(Family.SPT_DOCS, SPT15, 9, 0.05, 0.2)


# --------------------------------------------------- mean-level consistency

def test_nbar_increases_with_parameter():
    values = [distribution_stats(docs_coeffs(b, SPT10)).nbar
              for b in (0.1, 0.4, 0.7, 0.9)]
    assert all(a < b for a, b in zip(values, values[1:]))
    values = [distribution_stats(aocs_coeffs(g, SPT10)).nbar
              for g in (1.0, 10.0, 30.0, 60.0)]
    assert all(a < b for a, b in zip(values, values[1:]))
