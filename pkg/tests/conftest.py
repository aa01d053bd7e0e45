import numpy as np
import pytest

from fluxlattice.cli import bundled_config_path, load_config
from fluxlattice.qubit import FluxQubitParams
from fluxlattice.swt import coupler_sweep

Q1 = FluxQubitParams(6.2, 22.1, 32.2, 0.5, "q1")
COUPLER = FluxQubitParams(9.6, 20.2, 22.7, 0.5, "coupler")
Q3 = FluxQubitParams(5.6, 31.6, 25.2, 0.5, "q3")

# includes the on point, the off point and the |delta| >= 150 MHz band
SWEEP_GRID = np.unique(np.concatenate([np.linspace(-252, 30, 48), [0.0, -150.0]]))


@pytest.fixture(scope="session")
def device():
    return load_config(bundled_config_path())


@pytest.fixture(scope="session")
def chain(device):
    return tuple(device.qubits)


@pytest.fixture(scope="session")
def bundled_sweep(device):
    return coupler_sweep(tuple(device.qubits), device.network, SWEEP_GRID, device.m, device.dim,
                         workers=4)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
