"""Shared fixtures: the measured array parameters and cached preset runs."""

import numpy as np
import pytest

from fracbloch import (
    ModelParams,
    StateVector,
    build_fock_hamiltonian,
    build_single_particle_hamiltonian,
    propagate,
)
from fracbloch.scenario import preset_config, run_scenario

KAPPA = 0.95
RHO = 0.3
U0 = -4.0
FD = 0.4833
N_PAIR = 15
N_SINGLE = 23


@pytest.fixture(scope="session")
def pair_params():
    return ModelParams(kappa=KAPPA, rho=RHO, u0=U0, fd=FD, n_sites=N_PAIR)


@pytest.fixture(scope="session")
def pair_trajectory(pair_params):
    h = build_fock_hamiltonian(pair_params)
    psi0 = StateVector.pair_excitation(N_PAIR, N_PAIR // 2, N_PAIR // 2)
    return propagate(h, psi0, 8.5, 0.01)


@pytest.fixture(scope="session")
def single_trajectory():
    h = build_single_particle_hamiltonian(N_SINGLE, KAPPA, FD)
    psi0 = StateVector.delta(N_SINGLE, N_SINGLE // 2)
    return propagate(h, psi0, 8.5, 0.01)


def run_preset(name, out_dir):
    return run_scenario(preset_config(name), out_dir=str(out_dir))


@pytest.fixture(scope="session")
def fig4a_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("fig4a")
    return run_preset("fig4a-fractional-bo", out), out


@pytest.fixture(scope="session")
def fig4b_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("fig4b")
    return run_preset("fig4b-single-bo", out), out


def assert_allclose(actual, desired, atol=0.0, rtol=1e-12):
    np.testing.assert_allclose(actual, desired, atol=atol, rtol=rtol)
