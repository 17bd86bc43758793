"""Kraus channels and the per-gate noise step of density-matrix runs."""

from functools import reduce
from itertools import product
from math import sqrt
from typing import List, Tuple

from numpy import array, complex128, kron, ndarray

from ..models.circuit import Gate, GateKind
from ..models.noise import NoiseProfile
from ..models.observable import PAULIS
from .gates import gate_matrix, pauli_rotation, r_matrix
from .linalg import apply_kraus, apply_to_density

#
ZZ = kron(PAULIS['Z'], PAULIS['Z'])


def depolarizing_kraus(p: float, num_qubits: int = 1, /) -> List[ndarray]:
    """``ρ ↦ (1-p)ρ + p·I/d`` on ``num_qubits`` qubits."""
    dim = 4**num_qubits
    operators = [
        reduce(kron, (PAULIS[_] for _ in letters))
        for letters in product('IXYZ', repeat=num_qubits)
    ]
    weights = [1 - p * (dim - 1) / dim] + [p / dim] * (dim - 1)
    return [sqrt(w) * op for w, op in zip(weights, operators) if w > 0]


def amplitude_damping_kraus(gamma: float, /) -> List[ndarray]:
    return [
        array([[1, 0], [0, sqrt(1 - gamma)]], dtype=complex128),
        array([[0, sqrt(gamma)], [0, 0]], dtype=complex128),
    ]


def dephasing_kraus(p: float, /) -> List[ndarray]:
    """Phase flip with probability ``p``."""
    return [sqrt(1 - p) * PAULIS['I'], sqrt(p) * PAULIS['Z']]


def noisy_unitary(gate: Gate, profile: NoiseProfile, /) -> ndarray:
    """The gate unitary including the profile's coherent errors."""
    if gate.kind == GateKind.R and profile.overrotation:
        theta, phi = gate.params
        return r_matrix(theta * (1 + profile.overrotation), phi)
    if gate.kind == GateKind.CZ and profile.cz_phase:
        return pauli_rotation(ZZ, -profile.cz_phase / 2) @ gate_matrix(gate)
    return gate_matrix(gate)


def _channels(
    gate: Gate,
    profile: NoiseProfile,
    /,
) -> List[Tuple[List[ndarray], Tuple[int, ...]]]:
    if gate.kind == GateKind.RZ:
        return []
    channels = []
    if len(gate.qubits) == 2:
        p = profile.p2_for(*gate.qubits)
        if p:
            channels.append((depolarizing_kraus(p, 2), gate.qubits))
    elif profile.p1:
        channels.append((depolarizing_kraus(profile.p1), gate.qubits))
    for qubit in gate.qubits:
        if profile.amplitude_damping:
            channels.append(
                (amplitude_damping_kraus(profile.amplitude_damping), (qubit,))
            )
        if profile.dephasing:
            channels.append((dephasing_kraus(profile.dephasing), (qubit,)))
    return channels


def noisy_step(
    rho: ndarray,
    gate: Gate,
    profile: NoiseProfile,
    num_qubits: int,
    /,
) -> ndarray:
    """Apply ``gate`` and then the channels ``profile`` attaches to it.

    ``RZ`` gates are frame updates and stay noiseless; directives are
    identities.
    """
    if gate.is_directive:
        return rho
    rho = apply_to_density(
        rho, noisy_unitary(gate, profile), gate.qubits, num_qubits
    )
    for kraus, qubits in _channels(gate, profile):
        rho = apply_kraus(rho, kraus, qubits, num_qubits)
    return rho
