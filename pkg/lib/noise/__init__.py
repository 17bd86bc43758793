"""Noise injection: gate channels, readout confusion and bundled profiles."""

from logging import getLogger
from pathlib import Path
from typing import Final, Optional, Sequence, Tuple, Union

from numpy import (
    arange,
    asarray,
    bincount,
    complex128,
    float64,
    int64,
    ndarray,
    zeros,
)
from numpy.random import PCG64, Generator
from orjson import loads

from ..errors import NoiseError
from ..models.circuit import Circuit, Gate
from ..models.noise import NoiseProfile
from ..models.state import Counts, QuantumState
from ..sim import run_density_matrix, sample_probabilities
from ..sim.channels import noisy_step, noisy_unitary
from ..sim.linalg import apply_to_vector
from .qutrit import (
    fit_qutrit_rates,
    qutrit_populations,
    read_qutrit_trace,
    simulate_qutrit_trace,
)

#
logger = getLogger('Noise')

PROFILES_DIR: Final[Path] = Path(__file__).parent / 'profiles'
NOISELESS: Final[str] = 'noiseless'

__all__: Final[Tuple[str, ...]] = (
    'apply_gate_noise',
    'apply_readout_confusion',
    'bundled_profiles',
    'confuse_probabilities',
    'evolve',
    'fit_qutrit_rates',
    'load_profile',
    'qutrit_populations',
    'read_qutrit_trace',
    'simulate_qutrit_trace',
)


def bundled_profiles() -> Tuple[str, ...]:
    return tuple(sorted(_.stem for _ in PROFILES_DIR.glob('*.json')))


def load_profile(name_or_path: Union[str, Path, None], /) -> NoiseProfile:
    """Load a bundled profile by name (``good``, ``degraded``) or a JSON file.

    ``noiseless`` and ``None`` give the ideal profile.
    """
    if name_or_path is None or str(name_or_path) == NOISELESS:
        return NoiseProfile()
    path = Path(name_or_path)
    if not path.suffix and (PROFILES_DIR / ('%s.json' % path)).is_file():
        path = PROFILES_DIR / ('%s.json' % path)
    try:
        data = loads(path.read_bytes())
    except OSError as error:
        raise NoiseError(
            'Cannot read noise profile `%s`: %s.' % (name_or_path, error)
        ) from error
    except ValueError as error:
        raise NoiseError(
            'Noise profile `%s` is not valid JSON.' % name_or_path
        ) from error
    if not isinstance(data, dict):
        raise NoiseError('Noise profile `%s` is not a mapping.' % path)
    profile = NoiseProfile.from_dict(data)
    logger.debug('Loaded noise profile `%s` from %s.', profile.label, path)
    return profile


def apply_gate_noise(
    state: QuantumState,
    gate: Gate,
    profile: NoiseProfile,
    /,
) -> QuantumState:
    """Apply ``gate`` and its noise channels to ``state``."""
    if not state.is_density:
        if profile.is_stochastic:
            raise NoiseError('Stochastic noise needs a density matrix.')
        if gate.is_directive:
            return state
        return QuantumState(
            apply_to_vector(
                state.data,
                noisy_unitary(gate, profile),
                gate.qubits,
                state.num_qubits,
            )
        )
    return QuantumState(
        noisy_step(state.data, gate, profile, state.num_qubits)
    )


def evolve(
    circuit: Circuit,
    profile: Optional[NoiseProfile] = None,
    /,
) -> QuantumState:
    """Run ``circuit`` under ``profile``, ignoring measurements.

    A density matrix is used as soon as the profile has a stochastic
    channel; coherent errors alone keep the statevector.
    """
    if profile is not None and profile.is_stochastic:
        return run_density_matrix(circuit, profile)
    profile = profile or NoiseProfile()
    n = circuit.num_qubits
    vector = zeros(2**n, dtype=complex128)
    vector[0] = 1
    for gate in circuit.operations():
        vector = apply_to_vector(
            vector, noisy_unitary(gate, profile), gate.qubits, n
        )
    return QuantumState(vector)


def confuse_probabilities(
    probabilities: ndarray,
    profile: NoiseProfile,
    /,
    qubits: Optional[Sequence[int]] = None,
) -> ndarray:
    """Push an outcome distribution through the per-qubit confusion.

    ``qubits`` are the physical qubits read into each bit, most significant
    first; by default bit ``k`` is qubit ``k``.
    """
    probabilities = asarray(probabilities, dtype=float64)
    num_bits = len(probabilities).bit_length() - 1
    qubits = tuple(range(num_bits) if qubits is None else qubits)
    if len(qubits) != num_bits:
        raise NoiseError(
            'Got %s readout qubits for %s bits.' % (len(qubits), num_bits)
        )
    tensor = probabilities.reshape((2,) * num_bits)
    for bit, qubit in enumerate(qubits):
        matrix = profile.readout_matrix(qubit)
        tensor = (tensor.swapaxes(bit, -1) @ matrix).swapaxes(bit, -1)
    return tensor.reshape(-1)


def apply_readout_confusion(
    ideal: Union[Counts, ndarray],
    profile: NoiseProfile,
    rng_seed: int,
    /,
    qubits: Optional[Sequence[int]] = None,
    shots: Optional[int] = None,
) -> Counts:
    """Flip every shot's bits independently per the confusion matrices.

    A probability vector is first confused exactly and then sampled with
    ``shots`` draws.
    """
    if not isinstance(ideal, Counts):
        if shots is None:
            raise NoiseError('Sampling a distribution needs `shots`.')
        return sample_probabilities(
            confuse_probabilities(ideal, profile, qubits), shots, rng_seed
        )
    num_bits = ideal.num_bits
    qubits = tuple(range(num_bits) if qubits is None else qubits)
    if len(qubits) != num_bits:
        raise NoiseError(
            'Got %s readout qubits for %s bits.' % (len(qubits), num_bits)
        )
    keys = list(ideal.items())
    bits = asarray([[int(_) for _ in key] for key, _ in keys], dtype=int64)
    bits = bits.repeat([count for _, count in keys], axis=0)
    rng = Generator(PCG64(rng_seed))
    for position, qubit in enumerate(qubits):
        matrix = profile.readout_matrix(qubit)
        column = bits[:, position]
        column ^= rng.random(len(column)) < matrix[column, 1 - column]
    weights = 1 << arange(num_bits - 1, -1, -1)
    return Counts.from_array(
        bincount(bits @ weights, minlength=2**num_bits), num_bits
    )

