import math

import numpy as np
import pytest

from ptrevival.eigensystem import (PtParams, SpatialGrid, SptParams,
                                   eigenfunction_matrix, gauss_grid,
                                   potential_value, pt_eigenfunction, pt_energy,
                                   pt_potential_minimum, spt_eigenfunction,
                                   spt_energy, uniform_grid, well_domain)

SPT = SptParams(alpha=2.0, rho=10.0)
PT = PtParams(alpha=2.0, rho=5.0, k=5.0)
PT_ASYM = PtParams(alpha=2.0, rho=5.5, k=3.2)


# -------------------------------------------------------------- validation

def test_param_validation():
    with pytest.raises(ValueError):
        SptParams(alpha=0.0, rho=10.0)
    with pytest.raises(ValueError):
        SptParams(alpha=2.0, rho=1.0)
    with pytest.raises(ValueError):
        SptParams(alpha=2.0, rho=10.0, mass=-1.0)
    with pytest.raises(ValueError):
        PtParams(alpha=2.0, rho=5.0, k=0.9)


def test_grid_validation():
    good = np.array([0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        SpatialGrid(points=good[::-1].copy(), weights=good, physical=good)
    with pytest.raises(ValueError):
        SpatialGrid(points=good, weights=np.array([0.1, -0.1, 0.1]), physical=good)
    with pytest.raises(ValueError):
        SpatialGrid(points=good, weights=good[:2], physical=good)


# ---------------------------------------------------------------- energies

def test_spt_energy_values():
    assert spt_energy(SPT, 0) == 200.0        # 2 * 10^2
    assert spt_energy(SPT, 1) == 242.0        # 2 * 11^2
    np.testing.assert_allclose(spt_energy(SPT, np.arange(3)),
                               [200.0, 242.0, 288.0])


def test_pt_energy_values_and_gaps():
    assert pt_energy(PT, 0) == 200.0          # 2 * (rho+k)^2
    n = np.arange(6)
    e = pt_energy(PT, n)
    gaps = np.diff(e)
    # first gap 2 alpha^2 (2n + rho + k + 1) = 88, increasing by 16
    np.testing.assert_allclose(gaps, 88.0 + 16.0 * n[:-1])


def test_pt_energy_degenerate_well_matches_symmetric():
    # k = rho turns the general well into the symmetric well with alpha
    # doubled; spectra must coincide level by level
    spt2 = SptParams(alpha=4.0, rho=5.0)
    n = np.arange(8)
    np.testing.assert_allclose(pt_energy(PT, n), spt_energy(spt2, n), rtol=1e-15)


def test_energy_rejects_negative_n():
    with pytest.raises(ValueError):
        spt_energy(SPT, -1)
    with pytest.raises(ValueError):
        pt_energy(PT, np.array([0, -2]))


# --------------------------------------------------------------- potential

def test_potential_center_values():
    assert math.isclose(potential_value(SPT, 0.0), 2.0 * 10.0 * 9.0, rel_tol=1e-15)
    y_mid = np.pi / 8.0  # center of (0, pi/4) for alpha = 2
    want = 2.0 * (5.0 * 4.0 / 0.5 + 5.0 * 4.0 / 0.5)
    assert math.isclose(potential_value(PT, y_mid), want, rel_tol=1e-12)


def test_potential_domain_errors():
    lo, hi = well_domain(SPT)
    assert (lo, hi) == (-np.pi / 4.0, np.pi / 4.0)
    with pytest.raises(ValueError):
        potential_value(SPT, hi)
    with pytest.raises(ValueError):
        potential_value(PT, 0.0)
    with pytest.raises(ValueError):
        potential_value(PT, np.array([0.1, 0.9]))


def test_pt_potential_minimum():
    y_star = pt_potential_minimum(PT_ASYM)
    lo, hi = well_domain(PT_ASYM)
    assert lo < y_star < hi
    # numerical argmin agrees and the curvature is positive
    y = np.linspace(lo + 1e-3, hi - 1e-3, 20001)
    v = potential_value(PT_ASYM, y)
    assert abs(y[np.argmin(v)] - y_star) < 2e-4
    eps = 1e-5
    v0, vp, vm = (potential_value(PT_ASYM, y_star),
                  potential_value(PT_ASYM, y_star + eps),
                  potential_value(PT_ASYM, y_star - eps))
    assert vp > v0 and vm > v0
    # symmetric case: minimum at the well center with the known depth
    y_sym = pt_potential_minimum(PT)
    assert math.isclose(y_sym, np.pi / 8.0, rel_tol=1e-14)
    assert math.isclose(potential_value(PT, y_sym), 160.0, rel_tol=1e-12)


# -------------------------------------------------------------------- grids

def test_gauss_grid_shapes_and_mapping():
    g = gauss_grid(SPT, 200)
    assert g.size == 200
    assert np.all(np.abs(g.points) < 1.0)
    np.testing.assert_allclose(np.sin(SPT.alpha * g.physical), g.points,
                               rtol=1e-14)
    gp = gauss_grid(PT, 200)
    assert np.all((gp.points > 0.0) & (gp.points < 1.0))
    np.testing.assert_allclose(np.sin(PT.alpha * gp.physical) ** 2, gp.points,
                               rtol=1e-13)


def test_uniform_grid_midpoints():
    g = uniform_grid(SPT, 8)
    np.testing.assert_allclose(np.diff(g.points), 0.25)
    assert math.isclose(g.points[0], -1.0 + 0.125, rel_tol=1e-15)
    gp = uniform_grid(PT, 10)
    np.testing.assert_allclose(np.diff(gp.points), 0.1)


# ----------------------------------------------------------- wavefunctions

@pytest.mark.parametrize("params,nmax", [(SPT, 25), (PT, 20), (PT_ASYM, 20)])
def test_orthonormality(params, nmax):
    g = gauss_grid(params, 800)
    psi = eigenfunction_matrix(params, nmax, g)
    gram = (psi * g.weights) @ psi.T
    assert np.max(np.abs(gram - np.eye(nmax + 1))) < 1e-8


def test_norm_on_uniform_grid():
    # the envelope vanishes fast at the walls, so even the midpoint rule is
    # nearly spectral here
    g = uniform_grid(SPT, 512)
    psi0 = spt_eigenfunction(SPT, 0, g)
    assert abs(np.sum(g.weights * psi0 ** 2) - 1.0) < 1e-9


def test_spt_parity():
    g = gauss_grid(SPT, 400)
    for n in (0, 1, 4, 9):
        psi = spt_eigenfunction(SPT, n, g)
        assert np.max(np.abs(psi[::-1] - (-1.0) ** n * psi)) < 1e-10 * np.max(np.abs(psi))


def test_node_counts():
    g = uniform_grid(SPT, 2048)
    psi = spt_eigenfunction(SPT, 7, g)
    assert int(np.sum(np.diff(np.sign(psi)) != 0)) == 7
    gp = uniform_grid(PT_ASYM, 2048)
    psi = pt_eigenfunction(PT_ASYM, 6, gp)
    assert int(np.sum(np.diff(np.sign(psi)) != 0)) == 6


@pytest.mark.parametrize("params,n", [(SPT, 0), (SPT, 5), (PT, 3), (PT_ASYM, 4)])
def test_schrodinger_residual(params, n):
    # five-point finite-difference check of -psi''/2m + V psi = E_n psi on a
    # uniform physical grid away from the walls
    lo, hi = well_domain(params)
    pad = 0.12 * (hi - lo)
    y = np.linspace(lo + pad, hi - pad, 4001)
    h = y[1] - y[0]
    if isinstance(params, SptParams):
        pts = np.sin(params.alpha * y)
        e_n = spt_energy(params, n)
    else:
        pts = np.sin(params.alpha * y) ** 2
        e_n = pt_energy(params, n)
    grid = SpatialGrid(points=pts, weights=np.full_like(y, h), physical=y)
    psi = eigenfunction_matrix(params, n, grid)[n]
    d2 = (-psi[4:] + 16 * psi[3:-1] - 30 * psi[2:-2] + 16 * psi[1:-3]
          - psi[:-4]) / (12.0 * h * h)
    mid = slice(2, -2)
    resid = (-d2 / (2.0 * params.mass)
             + potential_value(params, y[mid]) * psi[mid] - e_n * psi[mid])
    assert np.max(np.abs(resid)) < 1e-4 * e_n * np.max(np.abs(psi))


def test_degenerate_well_eigenfunctions_match_symmetric():
    # PT(alpha, rho, rho) is SPT(2 alpha, rho) shifted by a quarter period;
    # states agree up to an overall sign per level
    spt2 = SptParams(alpha=4.0, rho=5.0)
    y = np.linspace(0.02, np.pi / 4.0 - 0.02, 301)
    pt_grid = SpatialGrid(points=np.sin(2.0 * y) ** 2,
                          weights=np.full_like(y, 1.0), physical=y)
    y_shift = y - np.pi / 8.0
    spt_grid = SpatialGrid(points=np.sin(4.0 * y_shift),
                           weights=np.full_like(y, 1.0), physical=y_shift)
    for n in (0, 1, 2, 5):
        a = pt_eigenfunction(PT, n, pt_grid)
        b = spt_eigenfunction(spt2, n, spt_grid)
        sign = np.sign(np.dot(a, b))
        np.testing.assert_allclose(a, sign * b, rtol=0, atol=1e-10 * np.max(np.abs(b)))


def test_eigenfunction_matrix_consistency():
    g = gauss_grid(SPT, 100)
    m = eigenfunction_matrix(SPT, 6, g)
    np.testing.assert_array_equal(m[6], spt_eigenfunction(SPT, 6, g))
    np.testing.assert_array_equal(m[3], spt_eigenfunction(SPT, 3, g))
