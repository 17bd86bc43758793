from math import pi

import pytest

from lib.backend import Backend
from lib.models.circuit import Circuit, Gate
from lib.models.noise import NoiseProfile


@pytest.fixture
def anyio_backend():
    return 'asyncio'


@pytest.fixture
def noiseless():
    return Backend(NoiseProfile())


@pytest.fixture
def readout_flips():
    """Three percent symmetric bit flips on every qubit, nothing else."""
    return Backend(NoiseProfile.symmetric_readout(0.03, 5))


@pytest.fixture
def bell_circuit():
    return Circuit(2, [Gate.h(0), Gate.cnot(0, 1)])


@pytest.fixture
def random_angles():
    return [0.3, 1.1, pi / 3, 2.5, -0.7]
