from typing import List, Sequence

from numpy import arange, float64, ndarray, ones

from ..errors import CircuitError, SimulationError
from ..models.circuit import Circuit, Gate, GateKind
from ..models.observable import PauliString
from ..models.state import Counts


def basis_change(pauli: PauliString, /) -> Circuit:
    """Rotate every ``X`` and ``Y`` of ``pauli`` onto ``Z``.

    ``X`` takes ``H``; ``Y`` takes ``S†`` and then ``H``.
    """
    gates: List[Gate] = []
    for qubit, letter in enumerate(pauli.ops):
        if letter == 'Y':
            gates.append(Gate(GateKind.SDG, (qubit,)))
        if letter in 'XY':
            gates.append(Gate.h(qubit))
    return Circuit(pauli.num_qubits, gates)


def measurement_circuit(circuit: Circuit, basis: PauliString, /) -> Circuit:
    """Append the basis change and a readout of the support of ``basis``."""
    if basis.num_qubits != circuit.num_qubits:
        raise CircuitError(
            'Basis %s does not match a %s qubit circuit.'
            % (basis, circuit.num_qubits)
        )
    if basis.is_identity:
        raise CircuitError('The identity needs no measurement.')
    body = circuit.without_measurements() + basis_change(basis)
    return body.extend([Gate.measure(*basis.support)])


def parity_signs(num_bits: int, positions: Sequence[int], /) -> ndarray:
    """``(-1)^(parity of the bits at positions)`` for every basis index."""
    signs = ones(2**num_bits, dtype=float64)
    indices = arange(2**num_bits)
    for position in positions:
        signs[(indices >> (num_bits - 1 - position)) & 1 == 1] *= -1
    return signs


def expectation_from_counts(counts: Counts, pauli: PauliString, /) -> float:
    """Mean parity of the bits under the non-identity letters of ``pauli``.

    Bit ``i`` of every outcome must be the ``Z`` readout of qubit ``i``
    after :func:`basis_change`.
    """
    if counts.num_bits != pauli.num_qubits:
        raise SimulationError(
            'Counts of %s bits for the %s qubit string %s.'
            % (counts.num_bits, pauli.num_qubits, pauli)
        )
    signs = parity_signs(counts.num_bits, pauli.support)
    return float(counts.frequencies() @ signs)
