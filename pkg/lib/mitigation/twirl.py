"""Randomized compiling of ``CZ`` gates by Pauli twirling."""

from math import pi
from typing import Final, List, Mapping, Tuple

from ..errors import MitigationError
from ..models.circuit import Gate, GateKind
from ..models.topology import NativeCircuit
from ..transpiler.decompose import wrap_angle
from ..transpiler.merge import absorb_virtual_z, merge_1q
from ..utils.seeds import make_rng

#
TWIRL_LETTERS: Final[str] = 'IXYZ'
# P·Z up to a phase
TIMES_Z: Final[Mapping[str, str]] = {'I': 'Z', 'X': 'Y', 'Y': 'X', 'Z': 'I'}


def _pauli(letter: str, qubit: int, /) -> List[Gate]:
    match letter:
        case 'X':
            return [Gate.r(pi, 0.0, qubit)]
        case 'Y':
            return [Gate.r(pi, pi / 2, qubit)]
        case 'Z':
            return [Gate.rz(pi, qubit)]
    return []


def cz_compensation(first: str, second: str, /) -> Tuple[str, str]:
    """The Pauli pair that undoes ``first ⊗ second`` after a ``CZ``.

    ``CZ`` maps ``X`` and ``Y`` on one qubit to themselves times ``Z`` on the
    other qubit and leaves ``Z`` alone.
    """
    return (
        TIMES_Z[first] if second in 'XY' else first,
        TIMES_Z[second] if first in 'XY' else second,
    )


def pauli_twirl_cz(
    native: NativeCircuit,
    num_randomizations: int,
    rng_seed: int,
    /,
) -> List[NativeCircuit]:
    """Wrap every ``CZ`` in a random Pauli pair and its compensation.

    The Paulis are merged into the neighbouring ``R`` gates, so every variant
    has the depth of the input and the same ideal unitary up to a global
    phase. Variant ``i`` draws from its own stream of ``rng_seed``.
    """
    if num_randomizations < 0:
        raise MitigationError('Randomizations must be non-negative.')
    if not native.circuit.count(GateKind.CZ):
        return [native] * num_randomizations
    variants = []
    for variant in range(num_randomizations):
        rng = make_rng(rng_seed, 'twirl', variant)
        gates: List[Gate] = []
        for gate in native.circuit.gates:
            if gate.kind != GateKind.CZ:
                gates.append(gate)
                continue
            a, b = gate.qubits
            first, second = (
                TWIRL_LETTERS[_] for _ in rng.integers(4, size=2)
            )
            after = cz_compensation(first, second)
            gates += _pauli(first, a) + _pauli(second, b)
            gates.append(gate)
            gates += _pauli(after[0], a) + _pauli(after[1], b)
        merged, frames = absorb_virtual_z(
            merge_1q(native.circuit.replace(gates))
        )
        variants.append(
            native.replace(
                merged,
                (
                    wrap_angle(old + new)
                    for old, new in zip(native.final_frames, frames)
                ),
            )
        )
    return variants
