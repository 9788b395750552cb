"""Oracle self-checks: Bessel routes agree, coupler closed form, bond lists."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracbloch import (
    BesselOracleParams,
    InvalidParameterError,
    ModelParams,
    SiteIndex2D,
    analytic_ws_amplitude,
    analytic_ws_profile,
    bessel_j,
    bessel_j_all,
    bessel_j_series,
    enumerate_fock_bonds,
    operator_from_bonds,
    two_site_coupler,
    ws_breathing_argument,
)

from conftest import FD, KAPPA


@pytest.mark.parametrize("n", [0, 1, 2, 5, 11, -1, -4])
@pytest.mark.parametrize("x", [0.0, 0.3, 1.7, 3.93, 7.8626, 12.5])
def test_recurrence_matches_series(n, x):
    assert bessel_j(n, x) == pytest.approx(bessel_j_series(n, x), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    n=st.integers(min_value=-20, max_value=20),
    x=st.floats(min_value=-15.0, max_value=15.0),
)
def test_recurrence_matches_series_property(n, x):
    assert abs(bessel_j(n, x) - bessel_j_series(n, x)) < 1e-9


def test_bessel_j_all_layout():
    values = bessel_j_all(6, 2.7)
    for n in range(-6, 7):
        assert values[6 + n] == pytest.approx(bessel_j(n, 2.7), abs=1e-15)
    # parity J_{-n} = (-1)^n J_n
    assert values[6 - 3] == pytest.approx(-values[6 + 3], abs=1e-15)


@pytest.mark.parametrize("x", [0.5, 3.93, 7.8626])
def test_bessel_sum_rule(x):
    n_max = int(math.ceil(3 * x)) + 10
    values = bessel_j_all(n_max, x)
    assert np.sum(values**2) == pytest.approx(1.0, abs=1e-8)


def test_ws_amplitude_delta_at_origin_and_revival():
    assert analytic_ws_amplitude(BesselOracleParams(KAPPA, FD, 0.0, 0)) == 1.0
    assert analytic_ws_amplitude(BesselOracleParams(KAPPA, FD, 0.0, 3)) == 0.0
    period = 2 * math.pi / FD
    assert analytic_ws_amplitude(
        BesselOracleParams(KAPPA, FD, period, 0)
    ) == pytest.approx(1.0, abs=1e-10)


def test_ws_amplitude_periodicity():
    period = 2 * math.pi / FD
    for z in (0.7, 2.31, 5.5):
        a = analytic_ws_amplitude(BesselOracleParams(KAPPA, FD, z, 2))
        b = analytic_ws_amplitude(BesselOracleParams(KAPPA, FD, z + period, 2))
        assert a == pytest.approx(b, abs=1e-12)


def test_ws_amplitude_half_period_value():
    # zeta(6.5 cm) = 7.862611; |J_0| there frozen from the series evaluation
    zeta = ws_breathing_argument(KAPPA, FD, 6.5)
    assert zeta == pytest.approx(7.862611, abs=1e-5)
    value = analytic_ws_amplitude(BesselOracleParams(KAPPA, FD, 6.5, 0))
    assert value == pytest.approx(0.2024382, abs=1e-6)
    assert value == pytest.approx(abs(bessel_j_series(0, zeta)), abs=1e-13)


def test_ws_profile_matches_scalar():
    profile = analytic_ws_profile(KAPPA, FD, 3.3, 8)
    for n in range(-8, 9):
        assert profile[8 + n] == pytest.approx(
            analytic_ws_amplitude(BesselOracleParams(KAPPA, FD, 3.3, n)), abs=1e-15
        )


def test_ws_params_reject_zero_tilt():
    with pytest.raises(InvalidParameterError):
        BesselOracleParams(kappa=1.0, fd=0.0, z=1.0, n=0)
    with pytest.raises(InvalidParameterError):
        analytic_ws_profile(1.0, 0.0, 1.0, 4)


def test_two_site_coupler_values():
    assert two_site_coupler(1.0, 0.0) == (1.0, 0.0)
    p_in, p_cross = two_site_coupler(1.0, math.pi / 4)
    assert p_in == pytest.approx(0.5, abs=1e-15)
    assert p_cross == pytest.approx(0.5, abs=1e-15)
    p_in, p_cross = two_site_coupler(0.95, 1.0)
    assert p_in == pytest.approx(math.cos(0.95) ** 2, abs=1e-15)
    assert p_cross == pytest.approx(math.sin(0.95) ** 2, abs=1e-15)
    with pytest.raises(InvalidParameterError):
        two_site_coupler(-0.1, 1.0)


@settings(max_examples=200, deadline=None)
@given(
    kappa=st.floats(min_value=0.0, max_value=10.0),
    z=st.floats(min_value=0.0, max_value=50.0),
)
def test_two_site_coupler_sums_to_one_exactly(kappa, z):
    p_in, p_cross = two_site_coupler(kappa, z)
    assert p_in + p_cross == 1.0
    assert 0.0 <= p_in <= 1.0


def test_bond_list_minimal_lattice():
    params = ModelParams(kappa=0.8, rho=0.0, u0=0.0, fd=0.0, n_sites=2)
    bonds, energies = enumerate_fock_bonds(params)
    assert len(bonds) == 4
    assert all(amp == -0.8 for _, _, amp in bonds)
    assert len(energies) == 4
    assert all(e == 0.0 for _, e in energies)


def test_bond_list_diagonal_features():
    params = ModelParams(kappa=0.5, rho=0.1, u0=1.0, fd=0.0, n_sites=3)
    bonds, energies = enumerate_fock_bonds(params)
    assert (SiteIndex2D(0, 0), SiteIndex2D(1, 1), -0.1) in bonds
    assert (SiteIndex2D(1, 1), SiteIndex2D(2, 2), -0.1) in bonds
    energy_map = {site: e for site, e in energies}
    for k in range(3):
        assert energy_map[SiteIndex2D(k, k)] == 1.0
    assert energy_map[SiteIndex2D(0, 1)] == 0.0


def test_bond_list_each_bond_once_and_symmetric_matrix(pair_params):
    bonds, energies = enumerate_fock_bonds(pair_params)
    seen = set()
    for a, b, _ in bonds:
        key = frozenset((a, b))
        assert key not in seen
        seen.add(key)
    h = operator_from_bonds(pair_params.n_sites, bonds, energies)
    assert np.array_equal(h, h.T)
