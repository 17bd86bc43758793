"""Exact dense simulation of circuits.

Bitstrings and basis indices are big-endian: qubit ``0`` is the most
significant bit.
"""

from typing import Iterable, Optional, Sequence

from numpy import (
    asarray,
    complex128,
    eye,
    float64,
    ndarray,
    outer,
    zeros,
)
from numpy.random import PCG64, Generator

from ..errors import SimulationError
from ..models.circuit import Circuit, GateKind
from ..models.noise import NoiseProfile
from ..models.observable import Observable
from ..models.state import Counts, QuantumState
from .channels import noisy_step
from .gates import gate_matrix
from .linalg import (
    apply_to_density,
    apply_to_vector,
    expectation_value,
    reduce_density,
    uhlmann_fidelity,
)


def run_statevector(circuit: Circuit, /) -> QuantumState:
    """Evolve ``|0…0⟩`` through ``circuit`` and return the statevector."""
    n = circuit.num_qubits
    vector = zeros(2**n, dtype=complex128)
    vector[0] = 1
    for index, gate in enumerate(circuit.gates):
        if gate.kind == GateKind.MEASURE:
            raise SimulationError(
                '[%s] Statevector runs take no measurements.' % index
            )
        if gate.is_directive:
            continue
        vector = apply_to_vector(vector, gate_matrix(gate), gate.qubits, n)
    return QuantumState(vector)


def run_density_matrix(
    circuit: Circuit,
    profile: Optional[NoiseProfile] = None,
    /,
) -> QuantumState:
    """Density-matrix evolution from ``|0…0⟩⟨0…0|``.

    With a profile every gate is followed by its noise channels.
    Measurements are ignored.
    """
    n = circuit.num_qubits
    rho = zeros((2**n, 2**n), dtype=complex128)
    rho[0, 0] = 1
    for gate in circuit.operations():
        if profile is None:
            rho = apply_to_density(rho, gate_matrix(gate), gate.qubits, n)
        else:
            rho = noisy_step(rho, gate, profile, n)
    return QuantumState(rho)


def circuit_unitary(circuit: Circuit, /) -> ndarray:
    """Return the dense unitary of ``circuit`` (directives skipped)."""
    n = circuit.num_qubits
    unitary = eye(2**n, dtype=complex128)
    for gate in circuit.operations():
        unitary = apply_to_vector(unitary, gate_matrix(gate), gate.qubits, n)
    return unitary


def marginal_probabilities(
    probabilities: ndarray,
    qubits: Sequence[int],
    num_qubits: int,
    /,
) -> ndarray:
    """Marginalize over all qubits but ``qubits`` (kept in the given order)."""
    qubits = list(qubits)
    if sorted(set(qubits)) != sorted(qubits) or any(
        not 0 <= _ < num_qubits for _ in qubits
    ):
        raise SimulationError('Invalid measured qubits %s.' % qubits)
    tensor = asarray(probabilities, dtype=float64).reshape((2,) * num_qubits)
    others = tuple(_ for _ in range(num_qubits) if _ not in qubits)
    tensor = tensor.sum(axis=others) if others else tensor
    kept = sorted(qubits)
    tensor = tensor.transpose([kept.index(_) for _ in qubits])
    return tensor.reshape(-1)


def sample_probabilities(
    probabilities: ndarray,
    shots: int,
    rng_seed: int,
    /,
) -> Counts:
    if shots < 1:
        raise SimulationError('Sampling needs at least one shot.')
    probabilities = asarray(probabilities, dtype=float64).clip(0)
    probabilities /= probabilities.sum()
    num_bits = len(probabilities).bit_length() - 1
    draw = Generator(PCG64(rng_seed)).multinomial(shots, probabilities)
    return Counts.from_array(draw, num_bits)


def sample_counts(
    state: QuantumState,
    shots: int,
    rng_seed: int,
    /,
    qubits: Optional[Iterable[int]] = None,
) -> Counts:
    """Draw ``shots`` multinomial samples from the Born distribution.

    The stream is numpy's ``PCG64`` seeded with ``rng_seed``.
    """
    probabilities = state.probabilities()
    if qubits is not None:
        probabilities = marginal_probabilities(
            probabilities, tuple(qubits), state.num_qubits
        )
    return sample_probabilities(probabilities, shots, rng_seed)


def partial_trace(state: QuantumState, keep: Iterable[int], /) -> QuantumState:
    """Return the reduced density matrix over ``keep``."""
    return QuantumState(
        reduce_density(state.density_matrix(), list(keep), state.num_qubits)
    )


def state_fidelity(a: QuantumState, b: QuantumState, /) -> float:
    """Uhlmann fidelity, ``|⟨ψ|φ⟩|²`` for pure inputs."""
    if a.num_qubits != b.num_qubits:
        raise SimulationError(
            'Fidelity of %s and %s qubit states.'
            % (a.num_qubits, b.num_qubits)
        )
    if not a.is_density and not b.is_density:
        return float(min(1.0, abs(a.data.conj() @ b.data) ** 2))
    if not a.is_density:
        overlap = expectation_value(b.data, outer(a.data, a.data.conj()))
        return float(min(1.0, max(0.0, overlap)))
    if not b.is_density:
        return state_fidelity(b, a)
    return uhlmann_fidelity(a.data, b.data)


def expectation(state: QuantumState, observable: Observable, /) -> float:
    """Exact expectation value of ``observable`` in ``state``."""
    if observable.num_qubits != state.num_qubits:
        raise SimulationError(
            'Observable on %s qubits, state on %s.'
            % (observable.num_qubits, state.num_qubits)
        )
    return expectation_value(state.data, observable.matrix())
