"""Trace estimation of braid representations on three qubits.

A Bell pair on qubits 1 and 2 leaves qubit 1 maximally mixed; a controlled
``u`` from the ancilla on qubit 0 then gives ``E(X₀) = ½·Re tr u`` and
``E(Y₀) = ½·Im tr u``.
"""

from logging import getLogger
from typing import Final, Iterable, List, Optional, Tuple

from numpy import asarray, block, complex128, eye, ndarray, zeros

from ..backend import Backend
from ..errors import CircuitError
from ..mitigation.estimate import estimate_pauli
from ..models.circuit import Circuit, Gate
from ..models.knot import BraidWord, KnotReport
from ..models.mitigation import Mitigation
from ..models.observable import PauliString
from ..utils.parallel import parallel_map
from ..utils.seeds import derive_seed
from .algebra import (
    braid_matrix,
    jones_polynomial,
    kauffman_bracket_closure,
    tl_generators,
)

#
logger = getLogger('Jones')

DEFAULT_SHOTS: Final[int] = 20_000
READOUTS: Final[Tuple[Tuple[str, str], ...]] = (('re', 'XII'), ('im', 'YII'))


def controlled(u: ndarray, /) -> ndarray:
    u = asarray(u, dtype=complex128)
    if u.shape != (2, 2):
        raise CircuitError('Expected a 2x2 unitary, got %s.' % (u.shape,))
    empty = zeros((2, 2), dtype=complex128)
    return block([[eye(2, dtype=complex128), empty], [empty, u]])


def trace_circuit(u: ndarray, /) -> Circuit:
    """``H`` on the ancilla, a Bell pair on qubits 1-2, then ``C-u``."""
    return Circuit(
        3,
        [
            Gate.h(0),
            Gate.h(1),
            Gate.cnot(1, 2),
            Gate.unitary(controlled(u), 0, 1),
        ],
        dict(label='trace'),
    )


def knot_point(
    word: BraidWord,
    theta: float,
    shots: int,
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
) -> KnotReport:
    """Estimate ``tr ρ(word)`` at ``θ`` from two independent readouts."""
    rep = tl_generators(theta)
    u = braid_matrix(rep, word)
    circuit = trace_circuit(u)
    parts = {
        part: estimate_pauli(
            circuit,
            PauliString(ops),
            shots,
            backend,
            mitigation,
            derive_seed(seed, part),
        ).scale(2)
        for part, ops in READOUTS
    }
    return KnotReport(
        word,
        theta,
        u.trace(),
        kauffman_bracket_closure(rep, word),
        jones_polynomial(rep, word),
        parts['re'],
        parts['im'],
    )


async def estimate_knot_trace(
    word: BraidWord,
    thetas: Iterable[float],
    shots: int,
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
) -> List[KnotReport]:
    thetas = list(thetas)
    for theta in thetas:
        tl_generators(theta)

    def run(item: Tuple[int, float], /) -> KnotReport:
        index, theta = item
        logger.info('[%s] Estimating tr ρ(%s) at θ=%.4f.', index, word, theta)
        return knot_point(
            word,
            theta,
            shots,
            backend,
            mitigation,
            derive_seed(seed, 'jones', index),
        )

    reports = await parallel_map(run, enumerate(thetas), label='knot point')
    logger.info(
        'Estimated %s traces of a braid with writhe %s.',
        len(reports),
        word.writhe,
    )
    return reports
