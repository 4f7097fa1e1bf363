import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from vortexcyclo.core import integrate, make_grid, make_params
from vortexcyclo.errors import EmptySuperposition, TruncatedState, UnderResolved
from vortexcyclo.observables import canonical_lz, centroid, density
from vortexcyclo.states import LandauSpec, build_component, landau_radial, superpose


def test_radial_ground_state_values():
    p = make_params(1.0)
    # u_00(0) = sqrt(2/pi) / rho_B
    assert landau_radial(0, 0, 0.0, p) == pytest.approx(math.sqrt(2 / math.pi) / 2, rel=1e-14)
    assert landau_radial(0, 1, 0.0, p) == 0.0
    assert landau_radial(0, 0, 2.0, p) == pytest.approx(math.sqrt(2 / math.pi) / 2 * math.exp(-1), rel=1e-14)


@pytest.mark.parametrize("n, ell", [(0, 0), (0, 1), (1, 2), (2, 3), (4, 0), (3, 7)])
@pytest.mark.parametrize("b", [1.0, -2.5])
def test_radial_normalized(n, ell, b):
    p = make_params(b)
    val, _ = quad(lambda r: landau_radial(n, ell, r, p) ** 2 * 2 * math.pi * r, 0, 40 * p.rho_b, limit=200)
    assert val == pytest.approx(1.0, abs=1e-10)


def test_radial_orthogonal_within_sector():
    p = make_params(1.0)
    val, _ = quad(lambda r: landau_radial(0, 2, r, p) * landau_radial(1, 2, r, p) * r, 0, 40, limit=200)
    assert abs(val) < 1e-12


@pytest.mark.parametrize("ell", [-2, -1, 0, 1, 3])
def test_canonical_lz_equals_ell(grid, params, ell):
    psi = build_component(LandauSpec(0, ell), grid, params)
    assert canonical_lz(psi) == pytest.approx(ell, abs=1e-10)


def test_plane_wave_factor_keeps_density(grid, params):
    a = build_component(LandauSpec(1, 1, 0.0), grid, params)
    b = build_component(LandauSpec(1, 1, 1.3), grid, params)
    np.testing.assert_allclose(density(a), density(b), atol=1e-14)


def test_plane_wave_shifts_lz(grid, params):
    # <x p_y - y p_x> picks up -p_c <y> = 0 for a centred state
    psi = build_component(LandauSpec(0, 1, 1.0), grid, params)
    assert canonical_lz(psi) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("n, ell", [(0, 0), (0, 1), (1, 2), (0, -1)])
def test_mean_square_radius(grid, params, n, ell):
    psi = build_component(LandauSpec(n, ell), grid, params)
    r2 = integrate(grid.rho**2 * density(psi), grid)
    assert r2 == pytest.approx((2 * n + abs(ell) + 1) * params.rho_b**2 / 2, rel=1e-9)


def test_component_normalized(grid, params):
    psi = build_component(LandauSpec(2, -3, 0.7), grid, params)
    assert psi.norm_sq() == pytest.approx(1.0, abs=1e-13)


def test_under_resolved(params):
    coarse = make_grid(32, 32, 24.0, 24.0)
    with pytest.raises(UnderResolved):
        build_component(LandauSpec(0, 1), coarse, params)


def test_under_resolved_momentum(grid, params):
    # dx = 0.25 allows |p_c| up to pi
    with pytest.raises(UnderResolved):
        build_component(LandauSpec(0, 0, 3.5), grid, params)


def test_force_skips_resolution_only(params):
    coarse = make_grid(32, 32, 24.0, 24.0)
    psi = build_component(LandauSpec(0, 0), coarse, params, force=True)
    assert psi.norm_sq() == pytest.approx(1.0)


def test_truncated_state(params):
    small = make_grid(32, 32, 4.0, 4.0)
    with pytest.raises(TruncatedState):
        build_component(LandauSpec(0, 3), small, params)


def test_empty_superposition(grid, params):
    with pytest.raises(EmptySuperposition):
        superpose([], grid, params)
    with pytest.raises(EmptySuperposition):
        superpose([LandauSpec(0, 1, weight=0.0)], grid, params)


@pytest.mark.parametrize("bad", [dict(n=-1, ell=0), dict(n=0.5, ell=0), dict(n=0, ell=1.5), dict(n=0, ell=0, p_c=math.nan)])
def test_spec_validation(bad):
    with pytest.raises(ValueError):
        LandauSpec(**bad)


def test_opposite_vortices_cancel_canonical_lz(grid, params):
    psi = superpose([LandauSpec(0, 1, 1.0), LandauSpec(0, -1, 1.0)], grid, params)
    assert abs(canonical_lz(psi)) < 1e-10


def test_counter_propagating_pair_centroid(grid, params):
    # cross term of the two components shifts the centroid off the origin;
    # closed form for Psi ~ exp(-r^2/4)(x cos ax + y sin ax) with a = 1.5
    psi = superpose([LandauSpec(0, -1, 1.5), LandauSpec(0, 1, -1.5)], grid, params)
    xc, yc = centroid(psi)
    q = math.exp(-4.5)
    assert abs(xc) < 1e-12
    assert yc == pytest.approx(6 * q / (2 - 9 * q), rel=1e-9)


@settings(max_examples=15, deadline=None)
@given(w=st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_global_weight_is_irrelevant(w):
    g = make_grid(64, 64, 16.0, 16.0)
    p = make_params(1.0)
    a = superpose([LandauSpec(0, 1, 0.5), LandauSpec(0, -1, -0.5)], g, p)
    b = superpose([LandauSpec(0, 1, 0.5, weight=w), LandauSpec(0, -1, -0.5, weight=w)], g, p)
    np.testing.assert_allclose(density(a), density(b), atol=1e-13)
