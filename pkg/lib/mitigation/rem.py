"""Readout error mitigation from basis-state calibration runs."""

from itertools import product
from logging import getLogger
from typing import Final, Iterable, Optional, Sequence

from numpy import (
    arange,
    asarray,
    column_stack,
    cumsum,
    float64,
    isfinite,
    maximum,
    ndarray,
    sort,
)
from numpy.linalg import cond, lstsq

from ..backend import Backend
from ..errors import ConditioningError, MitigationError
from ..models.circuit import Circuit, Gate
from ..models.mitigation import RemCalibration, RemMode
from ..models.state import Counts
from ..utils.seeds import derive_seed

#
logger = getLogger('REM')

MAX_CONDITION: Final[float] = 1e8


def _prepare(bits: Sequence[int], /) -> Circuit:
    return Circuit(
        len(bits),
        [Gate.x(q) for q, bit in enumerate(bits) if bit]
        + [Gate.measure(*range(len(bits)))],
        dict(label='rem-%s' % ''.join(map(str, bits))),
    )


def calibrate_rem(
    num_qubits: int,
    mode: RemMode,
    shots_per_state: int,
    backend: Backend,
    /,
    seed: int = 0,
    qubits: Optional[Sequence[int]] = None,
) -> RemCalibration:
    """Measure the assignment matrix of ``qubits`` (physical indices).

    Correlated mode prepares all ``2^n`` basis states; local mode prepares
    ``|0…0⟩`` and ``|1…1⟩`` and keeps the per-qubit marginals.
    """
    mode = RemMode(mode)
    if shots_per_state < 1:
        raise MitigationError('Calibration needs at least one shot.')
    qubits = tuple(range(num_qubits) if qubits is None else qubits)
    if len(qubits) != num_qubits:
        raise MitigationError(
            'Got %s calibration qubits for %s.' % (len(qubits), num_qubits)
        )

    def measure(bits: Sequence[int], /) -> Counts:
        return backend.run(
            _prepare(bits),
            shots_per_state,
            derive_seed(seed, 'rem', *qubits, *bits),
            layout=qubits,
        )

    if mode == RemMode.CORRELATED:
        matrix = column_stack(
            [
                measure(bits).frequencies(num_qubits)
                for bits in product((0, 1), repeat=num_qubits)
            ]
        )
        calibration = RemCalibration(mode, [matrix], shots_per_state)
    else:
        outcomes = [measure((_,) * num_qubits) for _ in (0, 1)]
        matrices = []
        for position in range(num_qubits):
            marginals = [
                _.marginal([position]).frequencies(1) for _ in outcomes
            ]
            matrices.append(column_stack(marginals))
        calibration = RemCalibration(mode, matrices, shots_per_state)
    logger.debug(
        'Calibrated %s readout of qubits %s (condition %.3g).',
        mode,
        qubits,
        cond(calibration.matrix),
    )
    return calibration


def cached_calibration(
    backend: Backend,
    qubits: Iterable[int],
    mode: RemMode,
    shots_per_state: int,
    /,
    seed: int = 0,
) -> RemCalibration:
    """A calibration reused by every estimate on the same backend."""
    qubits = tuple(qubits)
    return backend.cached(
        ('rem', RemMode(mode), qubits, shots_per_state, seed),
        lambda: calibrate_rem(
            len(qubits), mode, shots_per_state, backend, seed, qubits
        ),
    )


def project_to_simplex(vector: ndarray, /) -> ndarray:
    """Euclidean projection onto ``{p : p ≥ 0, Σp = 1}``."""
    vector = asarray(vector, dtype=float64)
    ordered = sort(vector)[::-1]
    partial = cumsum(ordered) - 1
    index = arange(1, len(vector) + 1)
    rho = index[ordered - partial / index > 0][-1]
    return maximum(vector - partial[rho - 1] / rho, 0)


def apply_rem(raw: Counts, cal: RemCalibration, /) -> ndarray:
    """Invert the assignment matrix by least squares on the simplex.

    Returns a probability vector over the measured bitstrings.
    """
    if raw.num_bits != cal.num_qubits:
        raise MitigationError(
            'Counts of %s bits with a %s qubit calibration.'
            % (raw.num_bits, cal.num_qubits)
        )
    matrix = cal.matrix
    condition = cond(matrix)
    if not isfinite(condition) or condition > MAX_CONDITION:
        raise ConditioningError(
            'Assignment matrix condition number %.3g exceeds %.0e.'
            % (condition, MAX_CONDITION)
        )
    solution = lstsq(matrix, raw.frequencies(cal.num_qubits), rcond=None)[0]
    return project_to_simplex(solution)
