from collections import Counter
from logging import getLogger
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import TranspileError
from ..models.circuit import Circuit, Gate, GateKind
from ..models.topology import Topology

#
logger = getLogger('Router')


def initial_layout(circuit: Circuit, topology: Topology, /) -> Tuple[int, ...]:
    """Place the busiest logical qubit on the star center.

    Ties prefer the logical qubit whose index already is the center, then the
    lowest index. The other logical qubits take the remaining physical qubits
    in ascending order.
    """
    if circuit.num_qubits > topology.num_qubits:
        raise TranspileError(
            'Circuit of %s qubits does not fit a %s qubit topology.'
            % (circuit.num_qubits, topology.num_qubits)
        )
    interactions = Counter(
        qubit
        for gate in circuit.gates
        if not gate.is_directive and len(gate.qubits) == 2
        for qubit in gate.qubits
    )
    center = topology.center
    if not interactions or center is None:
        return tuple(range(circuit.num_qubits))
    hub = max(
        interactions,
        key=lambda q: (interactions[q], q == center, -q),
    )
    free = iter(_ for _ in range(topology.num_qubits) if _ != center)
    return tuple(
        center if q == hub else next(free) for q in range(circuit.num_qubits)
    )


def route(
    circuit: Circuit,
    topology: Topology,
    /,
    layout: Optional[Sequence[int]] = None,
) -> Tuple[Circuit, Tuple[int, ...]]:
    """Map ``circuit`` onto physical qubits, inserting ``SWAP`` gates.

    Returns the circuit on ``topology.num_qubits`` wires and the final
    layout (logical qubit ``q`` ends on physical ``layout[q]``). Measurements
    are deferred to one terminal ``Measure`` on the final positions.
    """
    if circuit.num_qubits > topology.num_qubits:
        raise TranspileError(
            'Circuit of %s qubits does not fit a %s qubit topology.'
            % (circuit.num_qubits, topology.num_qubits)
        )
    positions = list(
        initial_layout(circuit, topology) if layout is None else layout
    )
    if len(positions) != circuit.num_qubits or len(set(positions)) != len(
        positions
    ):
        raise TranspileError('Invalid layout %s.' % (positions,))
    occupants: Dict[int, Optional[int]] = dict.fromkeys(
        range(topology.num_qubits)
    )
    occupants.update((p, q) for q, p in enumerate(positions))

    gates: List[Gate] = []
    swaps = 0
    for gate in circuit.without_measurements().gates:
        if not gate.is_directive and len(gate.qubits) == 2:
            a, b = (positions[_] for _ in gate.qubits)
            path = topology.shortest_path(a, b)
            for current, following in zip(path, path[1:-1]):
                gates.append(Gate(GateKind.SWAP, (current, following)))
                moved, other = occupants[current], occupants[following]
                occupants[current], occupants[following] = other, moved
                positions[moved] = following
                if other is not None:
                    positions[other] = current
                swaps += 1
        gates.append(gate.remap(dict(enumerate(positions))))
    if circuit.measured_qubits:
        gates.append(
            Gate.measure(*(positions[_] for _ in circuit.measured_qubits))
        )
    logger.debug('Routing inserted %s SWAP gates.', swaps)
    return (
        circuit.replace(gates, num_qubits=topology.num_qubits),
        tuple(positions),
    )
