from typing import Dict, List, Tuple

from numpy import complex128, eye

from ..errors import TranspileError
from ..models.circuit import Circuit, Gate, GateKind
from ..sim.gates import gate_matrix
from .decompose import (
    decompose_1q,
    is_zero_angle,
    normalize_r,
    push_rz_through,
    wrap_angle,
)


def _is_canonical(run: List[Gate], /) -> bool:
    kinds = [_.kind for _ in run]
    return len(run) <= 1 or kinds == [GateKind.R, GateKind.RZ]


def merge_1q(circuit: Circuit, /) -> Circuit:
    """Fuse every run of single-qubit gates on a wire into ``R`` + ``RZ``.

    A run ends at the next multi-qubit gate or directive on its wire. Runs
    that already read ``R`` then ``RZ``, and lone gates, are kept as they are,
    so merging twice changes nothing.
    """
    pending: Dict[int, List[Gate]] = {}
    gates: List[Gate] = []

    def flush(qubit: int, /) -> None:
        run = pending.pop(qubit, [])
        if _is_canonical(run):
            gates.extend(run)
            return
        product = eye(2, dtype=complex128)
        for gate in run:
            product = gate_matrix(gate) @ product
        gates.extend(decompose_1q(product, qubit))

    for gate in circuit.gates:
        if gate.is_single:
            pending.setdefault(gate.qubits[0], []).append(gate)
            continue
        for qubit in gate.qubits:
            flush(qubit)
        gates.append(gate)
    for qubit in sorted(pending):
        flush(qubit)
    return circuit.replace(gates)


def absorb_virtual_z(circuit: Circuit, /) -> Tuple[Circuit, Tuple[float, ...]]:
    """Remove every ``RZ`` by shifting the phases of the following ``R``.

    Returns the circuit and the frame left on each wire; applying
    ``RZ(frame)`` after the circuit restores the original unitary. Frames are
    dropped at measurements, where a Z rotation has no effect.
    """
    frames = [0.0] * circuit.num_qubits
    gates: List[Gate] = []
    for index, gate in enumerate(circuit.gates):
        match gate.kind:
            case GateKind.RZ:
                qubit = gate.qubits[0]
                frames[qubit] = wrap_angle(frames[qubit] + gate.params[0])
            case GateKind.R:
                qubit = gate.qubits[0]
                shifted = push_rz_through(-frames[qubit], gate)
                theta, phi = normalize_r(*shifted.params)
                if not is_zero_angle(theta):
                    gates.append(Gate.r(theta, phi, qubit))
            case GateKind.CZ | GateKind.BARRIER:
                gates.append(gate)
            case GateKind.MEASURE:
                for qubit in gate.qubits:
                    frames[qubit] = 0.0
                gates.append(gate)
            case _:
                raise TranspileError(
                    '[%s] Gate `%s` does not commute with a Z frame.'
                    % (index, gate.kind)
                )
    return circuit.replace(gates), tuple(frames)
