"""Lowering of arbitrary circuits to ``R``, ``CZ`` and virtual ``RZ``.

The pipeline routes on the coupling map, lowers every gate to
``{R, RZ, CZ}``, absorbs the ``RZ`` gates into the phases of the following
``R`` gates and merges single-qubit runs. The frames left at the end of the
circuit are stored on the :class:`NativeCircuit`; they do not change any
computational-basis measurement.
"""

from logging import getLogger
from math import pi
from typing import Final, List, Optional, Sequence, Tuple

from ..models.circuit import Circuit, Gate, GateKind
from ..models.topology import NativeCircuit, Topology
from ..sim.gates import H, gate_matrix
from .decompose import (
    decompose_1q,
    decompose_2q,
    decompose_2q_gates,
    normalize_r,
    push_rz_through,
    wrap_angle,
)
from .merge import absorb_virtual_z, merge_1q
from .route import initial_layout, route

#
logger = getLogger('Transpiler')

__all__: Final[Tuple[str, ...]] = (
    'absorb_virtual_z',
    'decompose_1q',
    'decompose_2q',
    'decompose_2q_gates',
    'initial_layout',
    'lower',
    'merge_1q',
    'push_rz_through',
    'route',
    'transpile',
)


def _lower_cnot(control: int, target: int, /) -> List[Gate]:
    hadamard = decompose_1q(H, target)
    return hadamard + [Gate.cz(control, target)] + hadamard


def _lower_gate(gate: Gate, /) -> List[Gate]:
    match gate.kind:
        case GateKind.R | GateKind.RZ | GateKind.CZ:
            return [gate]
        case GateKind.MEASURE | GateKind.BARRIER:
            return [gate]
        case GateKind.RY:
            return [Gate.r(*normalize_r(gate.params[0], pi / 2), *gate.qubits)]
        case GateKind.X:
            return [Gate.r(pi, 0.0, *gate.qubits)]
        case GateKind.Y:
            return [Gate.r(pi, pi / 2, *gate.qubits)]
        case GateKind.Z:
            return [Gate.rz(pi, *gate.qubits)]
        case GateKind.CNOT:
            return _lower_cnot(*gate.qubits)
        case GateKind.SWAP:
            a, b = gate.qubits
            return _lower_cnot(a, b) + _lower_cnot(b, a) + _lower_cnot(a, b)
        case GateKind.U4:
            return decompose_2q_gates(gate.matrix, *gate.qubits)
    return decompose_1q(gate_matrix(gate), *gate.qubits)


def lower(circuit: Circuit, /) -> Circuit:
    """Rewrite every gate with ``R``, ``RZ`` and ``CZ``."""
    return circuit.replace(
        lowered for gate in circuit.gates for lowered in _lower_gate(gate)
    )


def transpile(
    circuit: Circuit,
    topology: Optional[Topology] = None,
    /,
    layout: Optional[Sequence[int]] = None,
) -> NativeCircuit:
    """Route, lower and optimize ``circuit`` for ``topology``.

    The default topology is the 5-qubit star. The result is equivalent to the
    input up to a global phase, the layout permutation and the final
    ``RZ`` frames.
    """
    topology = topology or Topology.star()
    start = initial_layout(circuit, topology) if layout is None else layout
    routed, final_layout = route(circuit, topology, start)
    absorbed, frames = absorb_virtual_z(lower(routed))
    merged, extra = absorb_virtual_z(merge_1q(absorbed))
    native = NativeCircuit(
        merged,
        topology,
        final_layout,
        start,
        (wrap_angle(a + b) for a, b in zip(frames, extra)),
    )
    logger.debug(
        'Transpiled %s gates into %s native gates with %s CZ.',
        len(circuit),
        len(merged),
        merged.count(GateKind.CZ),
    )
    return native
