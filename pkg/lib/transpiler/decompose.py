"""Exact lowering of one- and two-qubit unitaries to ``R``, ``RZ`` and ``CZ``.

Single-qubit unitaries use the ZYZ Euler angles, rewritten so that the ``RY``
becomes an ``R`` and the leading ``RZ`` is commuted through it:
``RZ(α)·RY(β)·RZ(γ) = RZ(α+γ)·R(β, π/2−γ)``.

Two-qubit unitaries are first checked for locality and for a controlled
structure (at most two ``CZ``); everything else goes through the canonical
decomposition ``(A0⊗A1)·exp(i(aXX+bYY+cZZ))·(B0⊗B1)`` computed in the magic
basis, realized with three ``CZ``.
"""

from cmath import exp as cexp
from cmath import phase
from cmath import sqrt as csqrt
from logging import getLogger
from math import atan2, pi, sqrt
from typing import Final, List, Optional, Sequence, Tuple

from numpy import (
    abs as nabs,
    allclose,
    angle,
    array,
    complex128,
    diag,
    eye,
    kron,
    ndarray,
    prod,
)
from numpy.linalg import det, eig, eigh, norm, svd
from numpy.random import PCG64, Generator

from ..errors import CircuitError, TranspileError
from ..models.circuit import Circuit, Gate, GateKind
from ..models.topology import NativeCircuit, Topology
from ..sim.gates import (
    CZ,
    H,
    SWAP,
    X,
    Y,
    pauli_rotation,
    r_matrix,
    ry_matrix,
    rz_matrix,
)
from ..sim.linalg import phase_distance

#
logger = getLogger('Transpiler')

#
UNITARY_ATOL: Final[float] = 1e-10
ANGLE_ATOL: Final[float] = 1e-10
ONE_QUBIT_ATOL: Final[float] = 1e-9
TWO_QUBIT_ATOL: Final[float] = 1e-8
TAU: Final[float] = 2 * pi

#
MAGIC: Final[ndarray] = array(
    [[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]],
    dtype=complex128,
) / sqrt(2)
L0: Final[ndarray] = pauli_rotation(X, pi / 4)

Layer = Tuple[ndarray, ndarray]


def wrap_angle(angle: float, /) -> float:
    """Map ``angle`` to ``[0, 2π)``."""
    angle %= TAU
    return 0.0 if TAU - angle < 1e-14 else angle


def is_zero_angle(angle: float, /) -> bool:
    angle = wrap_angle(angle)
    return min(angle, TAU - angle) < ANGLE_ATOL


def normalize_r(theta: float, phi: float, /) -> Tuple[float, float]:
    """Return the ``R`` parameters with both angles in ``[0, 2π)``."""
    if theta < 0:
        theta, phi = -theta, phi + pi
    return wrap_angle(theta), wrap_angle(phi)


def _check_unitary(u: ndarray, dim: int, /) -> ndarray:
    u = array(u, dtype=complex128)
    if u.shape != (dim, dim):
        raise CircuitError(
            'Expected a %sx%s unitary, got %s.' % (dim, dim, u.shape)
        )
    if norm(u @ u.conj().T - eye(dim), 2) > UNITARY_ATOL:
        raise CircuitError('Matrix is not unitary.')
    return u


def euler_zyz(u: ndarray, /) -> Tuple[float, float, float]:
    """Return ``(α, β, γ)`` with ``u ∝ RZ(α)·RY(β)·RZ(γ)``, ``β ∈ [0, π]``."""
    v = u / csqrt(complex(det(u)))
    cos, sin = abs(v[0, 0]), abs(v[1, 0])
    beta = 2 * atan2(sin, cos)
    half_sum = phase(v[1, 1]) if cos > ANGLE_ATOL else 0.0
    half_diff = phase(v[1, 0]) if sin > ANGLE_ATOL else 0.0
    return half_sum + half_diff, beta, half_sum - half_diff


def decompose_1q(u: ndarray, /, qubit: int = 0) -> List[Gate]:
    """Lower a 2x2 unitary to at most one ``R`` followed by one ``RZ``."""
    u = _check_unitary(u, 2)
    alpha, beta, gamma = euler_zyz(u)
    gates: List[Gate] = []
    if not is_zero_angle(beta):
        gates.append(Gate.r(*normalize_r(beta, pi / 2 - gamma), qubit))
    if not is_zero_angle(alpha + gamma):
        gates.append(Gate.rz(wrap_angle(alpha + gamma), qubit))
    product = eye(2, dtype=complex128)
    for gate in gates:
        product = _single_matrix(gate) @ product
    if phase_distance(u, product) >= ONE_QUBIT_ATOL:
        raise TranspileError('Single-qubit decomposition lost accuracy.')
    return gates


def push_rz_through(rz_angle: float, gate: Gate, /) -> Gate:
    """Commute ``RZ(λ)`` forward through ``R(θ, φ)``.

    ``RZ(λ)·R(θ, φ) = R(θ, φ+λ)·RZ(λ)``; the returned gate is ``R(θ, φ+λ)``.
    """
    if gate.kind != GateKind.R:
        raise TranspileError('Only R gates take a frame shift.')
    theta, phi = gate.params
    return Gate.r(theta, wrap_angle(phi + rz_angle), *gate.qubits)


def _single_matrix(gate: Gate, /) -> ndarray:
    if gate.kind == GateKind.R:
        return r_matrix(*gate.params)
    return rz_matrix(*gate.params)


def _local_factors(u: ndarray, /) -> Optional[Layer]:
    """Split ``u = A⊗B`` when ``u`` is a tensor product."""
    rearranged = u.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    left, values, right = svd(rearranged)
    a = sqrt(values[0]) * left[:, 0].reshape(2, 2)
    b = sqrt(values[0]) * right[0].reshape(2, 2)
    if norm(kron(a, b) - u, 2) > UNITARY_ATOL * 100:
        return None
    return a, b


def _controlled_layers(u: ndarray, /) -> Optional[List[Layer]]:
    """Layers of a unitary controlled by qubit 0, or ``None``."""
    if max(nabs(u[:2, 2:]).max(), nabs(u[2:, :2]).max()) > UNITARY_ATOL:
        return None
    top, bottom = u[:2, :2], u[2:, 2:]
    target = top.conj().T @ bottom
    identity = eye(2, dtype=complex128)

    trace = target[0, 0] + target[1, 1]
    if abs(trace) < UNITARY_ATOL:
        values, vectors = eig(target)
        first = 0 if values[0].real >= values[1].real else 1
        v1 = vectors[:, first] / norm(vectors[:, first])
        pivot = int(nabs(v1).argmax())
        v1 = v1 * (abs(v1[pivot]) / v1[pivot])
        v2 = array([-v1[1].conjugate(), v1[0].conjugate()])
        w = array([v1, v2]).T
        lam = phase(values[first])
        control = diag([1, cexp(1j * lam)])
        return [(identity, w.conj().T), (control, top @ w)]

    alpha, beta, gamma = euler_zyz(target)
    a = rz_matrix(alpha) @ ry_matrix(beta / 2)
    b = ry_matrix(-beta / 2) @ rz_matrix(-(gamma + alpha) / 2)
    c = rz_matrix((gamma - alpha) / 2)
    # a·b·c = I and a·X·b·X·c equals the target up to the control phase
    offset = phase(complex(((a @ X @ b @ X @ c).conj().T @ target).trace()))
    control = diag([1, cexp(1j * offset)])
    return [
        (identity, H @ c),
        (identity, H @ b @ H),
        (control, top @ a @ H),
    ]


def _canonical_layers(u: ndarray, /) -> List[Layer]:
    """Three-``CZ`` layers from the canonical decomposition."""
    u = u / complex(det(u)) ** 0.25
    up = MAGIC.conj().T @ u @ MAGIC
    m = up.T @ up
    rng = Generator(PCG64(0))
    for _ in range(16):
        x = rng.uniform(0.1, 1.0)
        _, p = eigh(m.real + x * m.imag)
        d2 = p.T @ m @ p
        if allclose(d2, diag(d2.diagonal()), atol=1e-12):
            break
    else:
        raise TranspileError('Could not diagonalize the magic-basis square.')
    if det(p) < 0:
        p[:, 0] = -p[:, 0]
    d = array([cexp(0.5j * phase(_)) for _ in d2.diagonal()])
    if prod(d).real < 0:
        d[0] = -d[0]
    k1 = up @ p @ diag(1 / d)

    left = _local_factors(MAGIC @ k1 @ MAGIC.conj().T)
    right = _local_factors(MAGIC @ p.T @ MAGIC.conj().T)
    if left is None or right is None:
        raise TranspileError('Local factors are not tensor products.')
    (a0, a1), (b0, b1) = left, right

    theta = angle(d)
    theta[2] = -theta[0] - theta[1] - theta[3]
    a = (theta[0] + theta[1]) / 2
    b = (theta[1] + theta[3]) / 2
    c = (theta[0] + theta[3]) / 2
    alpha, beta, gamma = a - pi / 4, b - pi / 4, pi / 4 - c
    return [
        (L0.conj().T @ b0, H @ b1),
        (H @ pauli_rotation(X, alpha), pauli_rotation(Y, beta) @ H),
        (H, H @ pauli_rotation(Y, gamma)),
        (a0, a1 @ L0 @ H),
    ]


def _layers(u: ndarray, /) -> List[Layer]:
    local = _local_factors(u)
    if local is not None:
        return [local]
    layers = _controlled_layers(u)
    if layers is not None:
        return layers
    layers = _controlled_layers(SWAP @ u @ SWAP)
    if layers is not None:
        return [(b, a) for a, b in layers]
    return _canonical_layers(u)


def _layers_matrix(layers: Sequence[Layer], /) -> ndarray:
    product = eye(4, dtype=complex128)
    for index, (a, b) in enumerate(layers):
        if index:
            product = CZ @ product
        product = kron(a, b) @ product
    return product


def decompose_2q_gates(
    u: ndarray,
    first: int = 0,
    second: int = 1,
    /,
) -> List[Gate]:
    """Lower a 4x4 unitary on ``(first, second)`` to at most three ``CZ``."""
    u = _check_unitary(u, 4)
    layers = _layers(u)
    distance = phase_distance(u, _layers_matrix(layers))
    if distance >= TWO_QUBIT_ATOL:
        raise TranspileError(
            'Two-qubit decomposition is off by %.3g.' % distance
        )
    logger.debug(
        'Two-qubit unitary lowered with %s CZ (distance %.2g).',
        len(layers) - 1,
        distance,
    )
    gates: List[Gate] = []
    for index, (a, b) in enumerate(layers):
        if index:
            gates.append(Gate.cz(first, second))
        gates += decompose_1q(a, first)
        gates += decompose_1q(b, second)
    return gates


def decompose_2q(u: ndarray, /) -> NativeCircuit:
    """Return a two-qubit native fragment equal to ``u`` up to phase."""
    return NativeCircuit(
        Circuit(2, decompose_2q_gates(u)), Topology.line(2)
    )
