"""The circuit intermediate representation.

Qubit ``0`` is the first (top) qubit of a circuit and the most significant
bit of every bitstring and of every basis index.
"""

from dataclasses import dataclass, field
from math import isfinite
from typing import (
    ClassVar,
    Dict,
    Final,
    FrozenSet,
    Iterable,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from numpy import asarray, complex128, eye, ndarray
from numpy.linalg import norm

from ..errors import CircuitError
from .._compat import Self, StrEnum


class GateKind(StrEnum):
    R = 'r'
    RZ = 'rz'
    RY = 'ry'
    CZ = 'cz'
    CNOT = 'cx'
    SWAP = 'swap'
    H = 'h'
    S = 's'
    SDG = 'sdg'
    X = 'x'
    Y = 'y'
    Z = 'z'
    U2 = 'u2x2'
    U4 = 'u4x4'
    MEASURE = 'measure'
    BARRIER = 'barrier'


#
ONE_QUBIT: Final[FrozenSet[GateKind]] = frozenset(
    {
        GateKind.R,
        GateKind.RZ,
        GateKind.RY,
        GateKind.H,
        GateKind.S,
        GateKind.SDG,
        GateKind.X,
        GateKind.Y,
        GateKind.Z,
        GateKind.U2,
    }
)
TWO_QUBIT: Final[FrozenSet[GateKind]] = frozenset(
    {GateKind.CZ, GateKind.CNOT, GateKind.SWAP, GateKind.U4}
)
DIRECTIVES: Final[FrozenSet[GateKind]] = frozenset(
    {GateKind.MEASURE, GateKind.BARRIER}
)
NATIVE: Final[FrozenSet[GateKind]] = frozenset(
    {GateKind.R, GateKind.CZ, GateKind.MEASURE, GateKind.BARRIER}
)
PARAMS: Final[Mapping[GateKind, int]] = {
    GateKind.R: 2,
    GateKind.RZ: 1,
    GateKind.RY: 1,
}
UNITARY_ATOL: Final[float] = 1e-10


@dataclass(init=False, frozen=True)
class Gate(object):
    """A single operation of a circuit.

    ``R(θ, φ) = exp(-iθ(cos φ X + sin φ Y)/2)``, ``RZ(λ) = exp(-iλZ/2)`` and
    ``RY(θ) = exp(-iθY/2)``. For ``CNOT`` the first qubit is the control.
    """

    kind: Final[GateKind]
    qubits: Final[Tuple[int, ...]]
    params: Final[Tuple[float, ...]]
    matrix: Final[Optional[ndarray]] = field(compare=False, repr=False)

    def __init__(
        self: Self,
        /,
        kind: GateKind,
        qubits: Iterable[int],
        params: Iterable[float] = (),
        *,
        matrix: Optional[Sequence[Sequence[complex]]] = None,
    ) -> None:
        kind = GateKind(kind)
        qubits = tuple(int(_) for _ in qubits)
        params = tuple(float(_) for _ in params)
        if not qubits:
            raise CircuitError('Gate `%s` acts on no qubits.' % kind)
        if len(set(qubits)) != len(qubits):
            raise CircuitError(
                'Gate `%s` repeats a qubit: %s.' % (kind, qubits)
            )
        if any(_ < 0 for _ in qubits):
            raise CircuitError(
                'Gate `%s` has a negative qubit: %s.' % (kind, qubits)
            )
        if kind in ONE_QUBIT and len(qubits) != 1:
            raise CircuitError('Gate `%s` acts on one qubit.' % kind)
        if kind in TWO_QUBIT and len(qubits) != 2:
            raise CircuitError('Gate `%s` acts on two qubits.' % kind)
        if len(params) != PARAMS.get(kind, 0):
            raise CircuitError(
                'Gate `%s` takes %s parameters, got %s.'
                % (kind, PARAMS.get(kind, 0), len(params))
            )
        if not all(isfinite(_) for _ in params):
            raise CircuitError(
                'Gate `%s` has a non-finite angle: %s.' % (kind, params)
            )

        payload = None
        if kind in {GateKind.U2, GateKind.U4}:
            if matrix is None:
                raise CircuitError('Gate `%s` needs a matrix.' % kind)
            payload = asarray(matrix, dtype=complex128)
            dim = 2 ** len(qubits)
            if payload.shape != (dim, dim):
                raise CircuitError(
                    'Gate `%s` needs a %sx%s matrix, got %s.'
                    % (kind, dim, dim, payload.shape)
                )
            if norm(payload @ payload.conj().T - eye(dim), 2) > UNITARY_ATOL:
                raise CircuitError('Gate `%s` matrix is not unitary.' % kind)
            payload = payload.copy()
            payload.setflags(write=False)
        elif matrix is not None:
            raise CircuitError('Gate `%s` takes no matrix.' % kind)

        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 'qubits', qubits)
        object.__setattr__(self, 'params', params)
        object.__setattr__(self, 'matrix', payload)

    @property
    def is_directive(self: Self, /) -> bool:
        return self.kind in DIRECTIVES

    @property
    def is_single(self: Self, /) -> bool:
        return self.kind in ONE_QUBIT

    def remap(self: Self, mapping: Mapping[int, int], /) -> 'Gate':
        return Gate(
            self.kind,
            (mapping[_] for _ in self.qubits),
            self.params,
            matrix=self.matrix,
        )

    def inverse(self: Self, /) -> 'Gate':
        """Return the inverse gate, exact up to a global phase."""
        if self.kind == GateKind.R:
            theta, phi = self.params
            return Gate(self.kind, self.qubits, (-theta, phi))
        if self.kind in {GateKind.RZ, GateKind.RY}:
            return Gate(self.kind, self.qubits, (-self.params[0],))
        if self.kind == GateKind.S:
            return Gate(GateKind.SDG, self.qubits)
        if self.kind == GateKind.SDG:
            return Gate(GateKind.S, self.qubits)
        if self.matrix is not None:
            return Gate(self.kind, self.qubits, matrix=self.matrix.conj().T)
        return self

    @classmethod
    def r(cls, theta: float, phi: float, qubit: int, /) -> Self:
        return cls(GateKind.R, (qubit,), (theta, phi))

    @classmethod
    def rz(cls, angle: float, qubit: int, /) -> Self:
        return cls(GateKind.RZ, (qubit,), (angle,))

    @classmethod
    def ry(cls, angle: float, qubit: int, /) -> Self:
        return cls(GateKind.RY, (qubit,), (angle,))

    @classmethod
    def h(cls, qubit: int, /) -> Self:
        return cls(GateKind.H, (qubit,))

    @classmethod
    def x(cls, qubit: int, /) -> Self:
        return cls(GateKind.X, (qubit,))

    @classmethod
    def cz(cls, a: int, b: int, /) -> Self:
        return cls(GateKind.CZ, (a, b))

    @classmethod
    def cnot(cls, control: int, target: int, /) -> Self:
        return cls(GateKind.CNOT, (control, target))

    @classmethod
    def unitary(cls, matrix: ndarray, /, *qubits: int) -> Self:
        return cls(
            GateKind.U2 if len(qubits) == 1 else GateKind.U4,
            qubits,
            matrix=matrix,
        )

    @classmethod
    def measure(cls, *qubits: int) -> Self:
        return cls(GateKind.MEASURE, qubits)


@dataclass(init=False, frozen=True)
class Circuit(object):
    num_qubits: Final[int]
    gates: Final[Tuple[Gate, ...]]
    metadata: Final[Mapping[str, str]] = field(compare=False)

    MAX_QUBITS: ClassVar[int] = 14

    def __init__(
        self: Self,
        /,
        num_qubits: int,
        gates: Iterable[Gate] = (),
        metadata: Optional[Mapping[str, str]] = None,
    ) -> None:
        if not isinstance(num_qubits, int) or num_qubits < 1:
            raise CircuitError(
                'Circuit needs a positive qubit count, got %r.' % num_qubits
            )
        gates = tuple(gates)
        for index, gate in enumerate(gates):
            if not isinstance(gate, Gate):
                raise CircuitError('[%s] Not a gate: %r.' % (index, gate))
            if max(gate.qubits) >= num_qubits:
                raise CircuitError(
                    '[%s] Gate `%s` on %s exceeds %s qubits.'
                    % (index, gate.kind, gate.qubits, num_qubits)
                )
        object.__setattr__(self, 'num_qubits', num_qubits)
        object.__setattr__(self, 'gates', gates)
        object.__setattr__(self, 'metadata', dict(metadata or {}))

    def __len__(self: Self, /) -> int:
        return len(self.gates)

    def __add__(self: Self, other: 'Circuit', /) -> 'Circuit':
        return self.extend(other.gates)

    def extend(self: Self, gates: Iterable[Gate], /) -> 'Circuit':
        return Circuit(
            self.num_qubits, self.gates + tuple(gates), self.metadata
        )

    def replace(
        self: Self,
        gates: Iterable[Gate],
        /,
        num_qubits: Optional[int] = None,
    ) -> 'Circuit':
        return Circuit(num_qubits or self.num_qubits, gates, self.metadata)

    def inverse(self: Self, /) -> 'Circuit':
        return self.replace(
            gate.inverse()
            for gate in reversed(self.gates)
            if gate.kind != GateKind.MEASURE
        )

    def count(self: Self, /, *kinds: GateKind) -> int:
        return sum(1 for _ in self.gates if _.kind in kinds)

    def operations(self: Self, /) -> Tuple[Gate, ...]:
        """Return the gates that act on the state (no directives)."""
        return tuple(_ for _ in self.gates if not _.is_directive)

    @property
    def measured_qubits(self: Self, /) -> Tuple[int, ...]:
        return tuple(
            sorted(
                {
                    qubit
                    for gate in self.gates
                    if gate.kind == GateKind.MEASURE
                    for qubit in gate.qubits
                }
            )
        )

    def without_measurements(self: Self, /) -> 'Circuit':
        seen: Dict[int, int] = {}
        for index, gate in enumerate(self.gates):
            if gate.kind == GateKind.MEASURE:
                seen.update((_, index) for _ in gate.qubits)
            elif any(_ in seen for _ in gate.qubits):
                raise CircuitError(
                    '[%s] Gate `%s` acts after a measurement on %s.'
                    % (index, gate.kind, gate.qubits)
                )
        return self.replace(
            _ for _ in self.gates if _.kind != GateKind.MEASURE
        )
