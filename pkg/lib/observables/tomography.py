"""Pauli-basis state tomography by linear inversion."""

from itertools import product
from logging import getLogger
from typing import Dict, Final, Sequence

from numpy import complex128, float64, ndarray, zeros
from numpy.linalg import eigh

from ..backend import Backend
from ..errors import CircuitError
from ..mitigation.rem import apply_rem, cached_calibration
from ..models.circuit import Circuit
from ..models.mitigation import DEFAULT_REM_SHOTS, RemMode
from ..models.observable import PauliString, TomographyResult
from ..models.state import QuantumState
from ..utils.parallel import parallel_map
from ..utils.seeds import derive_seed
from .measure import measurement_circuit, parity_signs

#
logger = getLogger('Tomography')

MAX_TOMOGRAPHY_QUBITS: Final[int] = 5


def project_density(rho: ndarray, /) -> ndarray:
    """Zero the negative eigenvalues of ``rho`` and renormalize the trace."""
    rho = (rho + rho.conj().T) / 2
    eigenvalues, vectors = eigh(rho)
    eigenvalues = eigenvalues.clip(0)
    if eigenvalues.sum() <= 0:
        raise CircuitError('Tomography estimate has no positive spectrum.')
    eigenvalues /= eigenvalues.sum()
    return (vectors * eigenvalues) @ vectors.conj().T


def _setting_circuit(
    prep: Circuit,
    qubits: Sequence[int],
    label: str,
    /,
) -> Circuit:
    letters = ['I'] * prep.num_qubits
    for qubit, letter in zip(qubits, label):
        letters[qubit] = letter
    return measurement_circuit(prep, PauliString(''.join(letters)))


def linear_inversion(distributions: Dict[str, ndarray], /) -> ndarray:
    """Rebuild ``ρ = Σ_P ⟨P⟩·P / 2^k`` from every ``{X,Y,Z}^k`` setting.

    ``⟨P⟩`` averages the parities over all settings that agree with ``P`` on
    its support.
    """
    width = len(next(iter(distributions)))
    rho = zeros((2**width, 2**width), dtype=complex128)
    for letters in product('IXYZ', repeat=width):
        pauli = PauliString(''.join(letters))
        signs = parity_signs(width, pauli.support)
        values = [
            distribution @ signs
            for label, distribution in distributions.items()
            if all(label[_] == letters[_] for _ in pauli.support)
        ]
        rho += sum(values) / len(values) * pauli.matrix()
    return rho / 2**width


async def state_tomography(
    prep: Circuit,
    qubits: Sequence[int],
    shots_per_setting: int,
    backend: Backend,
    /,
    seed: int = 0,
    rem: bool = False,
) -> TomographyResult:
    """Reconstruct the reduced state of ``qubits`` after ``prep``.

    Every ``3^k`` Pauli setting is sampled with ``shots_per_setting`` shots,
    with local readout mitigation when ``rem`` is set. The linear-inversion
    estimate is projected onto the density matrices.
    """
    qubits = tuple(qubits)
    if not qubits or list(qubits) != sorted(set(qubits)):
        raise CircuitError(
            'Tomography qubits must be increasing: %s.' % (qubits,)
        )
    if len(qubits) > MAX_TOMOGRAPHY_QUBITS:
        raise CircuitError(
            'Tomography of %s qubits exceeds %s.'
            % (len(qubits), MAX_TOMOGRAPHY_QUBITS)
        )
    labels = [''.join(_) for _ in product('XYZ', repeat=len(qubits))]
    logger.info(
        'Running %s tomography settings on qubits %s.', len(labels), qubits
    )

    def measure(label: str, /) -> ndarray:
        native = backend.compile(_setting_circuit(prep, qubits, label))
        counts = backend.run(
            native, shots_per_setting, derive_seed(seed, 'tomography', label)
        )
        if not rem:
            return counts.frequencies(len(qubits))
        _, physical = backend.readout_qubits(native)
        calibration = cached_calibration(
            backend, physical, RemMode.LOCAL, DEFAULT_REM_SHOTS, seed
        )
        return apply_rem(counts, calibration)

    distributions = await parallel_map(measure, labels, label='setting')
    raw = linear_inversion(dict(zip(labels, distributions)))
    rho = project_density(raw)
    return TomographyResult(
        QuantumState(rho), qubits, labels, shots_per_setting, raw
    )
