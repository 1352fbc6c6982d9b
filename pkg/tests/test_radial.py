"""Tests for the disk fiber solver: oracles, mode structure, monotonicity."""

import numpy as np
import pytest

from magrobin import (
    FiberParams,
    InvalidGridError,
    NotRadialError,
    RadialGrid,
    assemble_fiber,
    critical_beta_disk,
    disk_ground,
    fiber_ground,
    is_admissible,
    radial_profile,
)

import oracles

# Frozen from tests/oracles.py (independent of the finite-difference solver):
#   bisection root of k I1(k) = I0(k), 30-term series -> mu = -k^2
MU_BESSEL_B0 = -2.5865628591780903
#   shooting integrator (solve_ivp RK45, rtol 1e-11) for m=0, b=0.5, beta=-1;
#   grid-refinement Richardson of the FD solver agrees to 1.1e-8
MU_SHOOTING_B05 = -2.549637992472604


def test_grid_weights_sum():
    g = RadialGrid.uniform(512, 2.0)
    assert g.r[-1] == 2.0
    assert np.all(np.diff(g.r) > 0) and g.r[0] > 0
    assert abs(g.weights.sum() - 2.0**2 / 2) < 1e-12


def test_assemble_rejects_bad_grids():
    p = FiberParams(m=0, R=1.0, b=0.0, beta=0.0)
    with pytest.raises(InvalidGridError):
        RadialGrid.uniform(4, 1.0)
    g = RadialGrid.uniform(16, 1.0)
    bad = RadialGrid(n=16, r=g.r[::-1].copy(), weights=g.weights)
    with pytest.raises(InvalidGridError):
        assemble_fiber(p, bad)
    with pytest.raises(InvalidGridError):
        assemble_fiber(FiberParams(m=0, R=2.0, b=0.0, beta=0.0), g)


def test_neumann_field_free_is_zero_with_constant_state():
    res = fiber_ground(FiberParams(m=0, R=1.0, b=0.0, beta=0.0), n=512)
    assert abs(res.mu1) < 1e-9
    assert np.ptp(res.f) < 1e-6 * abs(res.f[0])


def test_rayleigh_quotient_matches_form_on_constant():
    # constant test vector: kinetic part vanishes, quotient reduces to the
    # quadrature of the potential plus the boundary term
    R, b, beta = 1.0, 1.0, -1.0
    g = RadialGrid.uniform(2048, R)
    pair = assemble_fiber(FiberParams(m=0, R=R, b=b, beta=beta), g)
    ones = np.ones(g.n)
    expected = (R**3 * b**2 / 8.0 + 2.0 * beta) / R
    assert abs(pair.rayleigh(ones) - expected) < 1e-6


def test_bessel_oracle_field_free():
    res = fiber_ground(FiberParams(m=0, R=1.0, b=0.0, beta=-1.0), n=2048)
    assert abs(res.mu1 - MU_BESSEL_B0) / abs(MU_BESSEL_B0) < 1e-6
    # eigenfunction shape ~ I0(k r), normalized comparison at a few nodes
    k = np.sqrt(-MU_BESSEL_B0)
    r = res.grid.r[:: res.grid.n // 8]
    shape = np.array([oracles.bessel_i0(k * ri) for ri in r])
    ratio = res.f[:: res.grid.n // 8] / shape
    assert np.ptp(ratio) < 1e-4 * ratio.mean()


def test_shooting_regression_pin_b_half():
    res = fiber_ground(FiberParams(m=0, R=1.0, b=0.5, beta=-1.0), n=4096)
    assert abs(res.mu1 - MU_SHOOTING_B05) < 5e-7


def test_grid_convergence_second_order():
    mus = [
        fiber_ground(FiberParams(m=0, R=1.0, b=0.5, beta=-1.0), n=n).mu1
        for n in (512, 1024, 2048)
    ]
    order = np.log2((mus[0] - mus[1]) / (mus[1] - mus[2]))
    assert order >= 1.7


def test_ground_state_positive_and_gap():
    rng = np.random.default_rng(7)
    for _ in range(6):
        b = rng.uniform(0.0, 2.0)
        beta = -rng.uniform(0.2, 3.0)
        m = int(rng.integers(0, 3))
        res = fiber_ground(FiberParams(m=m, R=1.0, b=b, beta=beta), n=512)
        assert res.f.min() > 0.0
        assert res.mu2 > res.mu1
        assert res.f[-1] > 0.0
        assert abs(res.grid.weights @ res.f**2 - 1.0) < 1e-10


def test_mode_domination_above_bR2():
    rng = np.random.default_rng(11)
    for _ in range(5):
        b = rng.uniform(0.3, 2.5)
        R = rng.uniform(0.6, 1.5)
        beta = -rng.uniform(0.3, 2.0)
        grid = RadialGrid.uniform(1024, R)
        mu0 = fiber_ground(FiberParams(m=0, R=R, b=b, beta=beta), grid=grid).mu1
        for extra in (1, 2):
            m = int(np.ceil(b * R * R)) + extra
            mu_m = fiber_ground(FiberParams(m=m, R=R, b=b, beta=beta), grid=grid).mu1
            assert mu_m > mu0


def test_mode_domination_spec_case_b2():
    # at b=2 the bound only covers |m| > bR^2 = 2, so assert m=3 over m=0
    grid = RadialGrid.uniform(2048, 1.0)
    mu0 = fiber_ground(FiberParams(m=0, R=1.0, b=2.0, beta=-1.0), grid=grid).mu1
    mu3 = fiber_ground(FiberParams(m=3, R=1.0, b=2.0, beta=-1.0), grid=grid).mu1
    assert mu3 > mu0


def test_disk_ground_scan_and_radial_profile():
    st = disk_ground(1.0, 0.9, -1.0, n=1024)
    assert st.m_star == 0  # b R^2 = 0.9 < 1
    assert st.profile is not None
    assert [m for m, _ in st.scanned_modes] == [-1, 0, 1]
    assert st.lambda1 == min(mu for _, mu in st.scanned_modes)
    assert abs(st.m_star) <= 0.9


def test_disk_ground_constant_test_bound():
    st = disk_ground(1.0, 1.0, -1.0, n=2048)
    assert st.lambda1 <= (1.0 / 8.0 - 2.0) + 1e-9  # = -15/8


def test_disk_ground_field_free_oracle():
    st = disk_ground(1.0, 0.0, -1.0, n=2048)
    assert st.m_star == 0
    assert abs(st.lambda1 - MU_BESSEL_B0) / abs(MU_BESSEL_B0) < 1e-6


def test_monotone_and_continuous_in_beta():
    grid_n = 1024
    betas = np.linspace(-3.0, 0.0, 13)
    lams = [disk_ground(1.0, 0.5, b_, n=grid_n).lambda1 for b_ in betas]
    assert np.all(np.diff(lams) >= -1e-12)
    # continuity: shrinking increments shrink the eigenvalue change
    lam0 = disk_ground(1.0, 0.5, -1.0, n=grid_n).lambda1
    deltas = [abs(disk_ground(1.0, 0.5, -1.0 + d, n=grid_n).lambda1 - lam0)
              for d in (1e-2, 1e-3, 1e-4)]
    assert deltas[0] > deltas[1] > deltas[2]
    assert deltas[2] < 1e-3


def test_diamagnetic_lower_bound_on_disk():
    rng = np.random.default_rng(3)
    for _ in range(4):
        beta = -rng.uniform(0.3, 2.0)
        lam0 = disk_ground(1.0, 0.0, beta, n=1024).lambda1
        for b in (0.2, 0.7, 1.3):
            assert disk_ground(1.0, b, beta, n=1024).lambda1 >= lam0 - 1e-10


def test_admissible_cases():
    cert = is_admissible(1.0, 0.5, -1.0, n=1024)
    assert cert.admissible and cert.sufficient_condition
    assert cert.lambda1 < (1.0 / 32.0 - 2.0) + 1e-9  # constant-test bound

    cert = is_admissible(1.0, 0.5, -1e-6, n=1024)
    assert not cert.admissible and cert.lambda1 > 0.0

    cert = is_admissible(1.0, 0.0, -1.0, n=1024)
    assert not cert.admissible  # b must be strictly positive


def test_critical_beta_bound_and_dilation():
    bc = critical_beta_disk(1.0, 1.0, n=1024)
    assert -1.0 / 16.0 - 1e-4 <= bc < 0.0

    bc_small = critical_beta_disk(1.0, 1e-3, n=1024)
    assert -6.25e-8 - 1e-9 <= bc_small < 0.0

    # dilation identity: beta_c(1, B_2) = beta_c(4, B_1) / 2
    bc_R2 = critical_beta_disk(2.0, 1.0, n=1024)
    bc_dil = critical_beta_disk(1.0, 4.0, n=1024) / 2.0
    assert abs(bc_R2 - bc_dil) < 5e-6


def test_radial_profile_properties():
    st = disk_ground(1.0, 0.5, -1.0, n=1024)
    prof = st.profile
    h = prof.s[1] - prof.s[0]
    assert prof.psi[1:-1].min() > 0.0
    assert abs(prof.psi_prime[-1]) < 20.0 * h  # f'(0) = 0 up to discretization
    assert abs(prof.psi[0] - st.fiber.f[-1]) < 1e-10  # psi(0) is the boundary value

    flat = disk_ground(1.0, 0.0, 0.0, n=512)
    assert np.ptp(flat.profile.psi) < 1e-6 * abs(flat.profile.psi[0])
    assert np.max(np.abs(flat.profile.psi_prime)) < 1e-4

    bad = disk_ground(1.0, 0.0, 0.0, n=512)
    object.__setattr__(bad, "m_star", 1)
    with pytest.raises(NotRadialError):
        radial_profile(bad)
