"""The seven-angle hardware-efficient ansatz on the star."""

from typing import Iterable, Optional, Union

from ..backend import Backend
from ..models.circuit import Circuit, Gate
from ..models.observable import Observable
from ..models.vqe import AnsatzState
from ..sim import expectation, run_statevector


def ansatz_circuit(theta: Union[AnsatzState, Iterable[float]], /) -> Circuit:
    """``RY`` on every qubit, ``CZ`` from qubit 0 to the others, then
    ``RY`` on qubits 1-3."""
    if not isinstance(theta, AnsatzState):
        theta = AnsatzState(theta)
    angles = theta.theta
    return Circuit(
        4,
        [Gate.ry(angles[_], _) for _ in range(4)]
        + [Gate.cz(0, _) for _ in (1, 2, 3)]
        + [Gate.ry(angles[3 + _], _) for _ in (1, 2, 3)],
        dict(label='ansatz', layout=theta.layout),
    )


def exact_energy(
    theta: Union[AnsatzState, Iterable[float]],
    hamiltonian: Observable,
    /,
    backend: Optional[Backend] = None,
) -> float:
    """``⟨ψ(θ)|H|ψ(θ)⟩`` without shot noise.

    A noisy backend contributes its gate channels through the logical state.
    """
    circuit = ansatz_circuit(theta)
    if backend is None or backend.profile.is_noiseless:
        return expectation(run_statevector(circuit), hamiltonian)
    return expectation(backend.logical_state(circuit), hamiltonian)
