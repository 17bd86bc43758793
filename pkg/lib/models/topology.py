from collections import deque
from dataclasses import dataclass, field
from typing import (
    Dict,
    Final,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Tuple,
)

from ..errors import CircuitError, RoutingError
from .circuit import Circuit, GateKind
from .._compat import Self

#
DEFAULT_SIZE: Final[int] = 5
DEFAULT_CENTER: Final[int] = 2


@dataclass(init=False, frozen=True)
class Topology(object):
    """An undirected coupling map over physical qubits."""

    num_qubits: Final[int]
    edges: Final[FrozenSet[Tuple[int, int]]]
    center: Final[Optional[int]]

    def __init__(
        self: Self,
        /,
        num_qubits: int,
        edges: Iterable[Tuple[int, int]],
        center: Optional[int] = None,
    ) -> None:
        normalized = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b or not (0 <= a < num_qubits and 0 <= b < num_qubits):
                raise CircuitError('Invalid edge (%s, %s).' % (a, b))
            normalized.add((min(a, b), max(a, b)))
        if center is not None and not 0 <= center < num_qubits:
            raise CircuitError('Invalid center %s.' % center)
        object.__setattr__(self, 'num_qubits', num_qubits)
        object.__setattr__(self, 'edges', frozenset(normalized))
        object.__setattr__(self, 'center', center)

    @classmethod
    def star(
        cls,
        num_qubits: int = DEFAULT_SIZE,
        /,
        center: int = DEFAULT_CENTER,
    ) -> Self:
        """Return a star with every peripheral coupled to ``center``."""
        return cls(
            num_qubits,
            ((center, _) for _ in range(num_qubits) if _ != center),
            center,
        )

    @classmethod
    def line(cls, num_qubits: int, /) -> Self:
        return cls(num_qubits, ((_, _ + 1) for _ in range(num_qubits - 1)))

    def has_edge(self: Self, a: int, b: int, /) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def neighbors(self: Self, qubit: int, /) -> Tuple[int, ...]:
        return tuple(
            sorted(
                b if a == qubit else a
                for a, b in self.edges
                if qubit in (a, b)
            )
        )

    def degree(self: Self, qubit: int, /) -> int:
        return len(self.neighbors(qubit))

    def shortest_path(self: Self, source: int, target: int, /) -> List[int]:
        parents: Dict[int, int] = {source: source}
        queue = deque([source])
        while queue:
            node = queue.popleft()
            if node == target:
                break
            for other in self.neighbors(node):
                if other not in parents:
                    parents[other] = node
                    queue.append(other)
        if target not in parents:
            raise RoutingError(
                'Qubits %s and %s are disconnected.' % (source, target)
            )
        path = [target]
        while path[-1] != source:
            path.append(parents[path[-1]])
        return path[::-1]


@dataclass(init=False, frozen=True)
class NativeCircuit(object):
    """A circuit lowered to ``R``, ``CZ``, ``Measure`` and ``Barrier``.

    ``layout`` maps logical qubits to the physical qubits holding them at the
    end of the circuit. ``final_frames`` are the virtual-Z angles left on
    every physical wire; applying ``RZ(frame)`` after the circuit restores
    the exact unitary of the source circuit up to a global phase.
    """

    circuit: Final[Circuit]
    topology: Final[Topology]
    layout: Final[Tuple[int, ...]]
    initial_layout: Final[Tuple[int, ...]]
    final_frames: Final[Tuple[float, ...]] = field(compare=False)

    def __init__(
        self: Self,
        /,
        circuit: Circuit,
        topology: Topology,
        layout: Optional[Iterable[int]] = None,
        initial_layout: Optional[Iterable[int]] = None,
        final_frames: Optional[Iterable[float]] = None,
    ) -> None:
        if circuit.num_qubits != topology.num_qubits:
            raise CircuitError(
                'Native circuit width %s differs from topology size %s.'
                % (circuit.num_qubits, topology.num_qubits)
            )
        allowed = {
            GateKind.R,
            GateKind.RZ,
            GateKind.CZ,
            GateKind.MEASURE,
            GateKind.BARRIER,
        }
        for index, gate in enumerate(circuit.gates):
            if gate.kind not in allowed:
                raise CircuitError(
                    '[%s] Gate `%s` is not native.' % (index, gate.kind)
                )
            if gate.kind == GateKind.CZ and not topology.has_edge(
                *gate.qubits
            ):
                raise CircuitError(
                    '[%s] CZ on %s is not a topology edge.'
                    % (index, gate.qubits)
                )
        layout = tuple(
            range(circuit.num_qubits) if layout is None else layout
        )
        initial_layout = tuple(
            layout if initial_layout is None else initial_layout
        )
        if len(set(layout)) != len(layout) or len(initial_layout) != len(
            layout
        ):
            raise CircuitError('Invalid layout %s.' % (layout,))
        frames = tuple(
            float(_)
            for _ in (
                final_frames
                if final_frames is not None
                else (0.0,) * circuit.num_qubits
            )
        )
        object.__setattr__(self, 'circuit', circuit)
        object.__setattr__(self, 'topology', topology)
        object.__setattr__(self, 'layout', layout)
        object.__setattr__(self, 'initial_layout', initial_layout)
        object.__setattr__(self, 'final_frames', frames)

    @property
    def num_logical(self: Self, /) -> int:
        return len(self.layout)

    @property
    def gates(self: Self, /):
        return self.circuit.gates

    def physical(self: Self, logical: Iterable[int], /) -> Tuple[int, ...]:
        return tuple(self.layout[_] for _ in logical)

    def inverse_layout(self: Self, /) -> Mapping[int, int]:
        return {p: q for q, p in enumerate(self.layout)}

    def replace(
        self: Self,
        circuit: Circuit,
        /,
        final_frames: Optional[Iterable[float]] = None,
    ) -> 'NativeCircuit':
        return NativeCircuit(
            circuit,
            self.topology,
            self.layout,
            self.initial_layout,
            self.final_frames if final_frames is None else final_frames,
        )
