from math import cos, sin, sqrt
from typing import Final

from numpy import array, complex128, diag, exp, ndarray

from ..errors import CircuitError
from ..models.circuit import Gate, GateKind
from ..models.observable import PAULIS

#
I2, X, Y, Z = (PAULIS[_] for _ in 'IXYZ')
H: Final[ndarray] = array([[1, 1], [1, -1]], dtype=complex128) / sqrt(2)
S: Final[ndarray] = array([[1, 0], [0, 1j]], dtype=complex128)
SDG: Final[ndarray] = S.conj().T
CZ: Final[ndarray] = diag([1, 1, 1, -1]).astype(complex128)
CNOT: Final[ndarray] = array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    dtype=complex128,
)
SWAP: Final[ndarray] = array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    dtype=complex128,
)

for _ in (H, S, SDG, CZ, CNOT, SWAP):
    _.setflags(write=False)


def r_matrix(theta: float, phi: float, /) -> ndarray:
    """``exp(-iθ(cos φ X + sin φ Y)/2)``."""
    c, s = cos(theta / 2), sin(theta / 2)
    return array(
        [
            [c, -1j * exp(-1j * phi) * s],
            [-1j * exp(1j * phi) * s, c],
        ],
        dtype=complex128,
    )


def rz_matrix(angle: float, /) -> ndarray:
    return diag([exp(-0.5j * angle), exp(0.5j * angle)]).astype(complex128)


def ry_matrix(angle: float, /) -> ndarray:
    c, s = cos(angle / 2), sin(angle / 2)
    return array([[c, -s], [s, c]], dtype=complex128)


def rx_matrix(angle: float, /) -> ndarray:
    return r_matrix(angle, 0.0)


def pauli_rotation(pauli: ndarray, angle: float, /) -> ndarray:
    """``exp(i·angle·P)`` for a Pauli (or Pauli product) ``P``."""
    return cos(angle) * (pauli @ pauli) + 1j * sin(angle) * pauli


def gate_matrix(gate: Gate, /) -> ndarray:
    match gate.kind:
        case GateKind.R:
            return r_matrix(*gate.params)
        case GateKind.RZ:
            return rz_matrix(*gate.params)
        case GateKind.RY:
            return ry_matrix(*gate.params)
        case GateKind.H:
            return H
        case GateKind.S:
            return S
        case GateKind.SDG:
            return SDG
        case GateKind.X:
            return X
        case GateKind.Y:
            return Y
        case GateKind.Z:
            return Z
        case GateKind.CZ:
            return CZ
        case GateKind.CNOT:
            return CNOT
        case GateKind.SWAP:
            return SWAP
        case GateKind.U2 | GateKind.U4:
            return gate.matrix
    raise CircuitError('Gate `%s` has no unitary.' % gate.kind)
