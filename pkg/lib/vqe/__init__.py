"""VQE for the single-bath Anderson impurity model."""

from typing import Final, Tuple

from .ansatz import ansatz_circuit, exact_energy
from .hamiltonian import (
    Convention,
    aim_fermionic_matrix,
    build_aim_qubit_hamiltonian,
    creation_operators,
    exact_ground_energy,
    single_particle_energy,
)
from .optimize import energy, parameter_shift_gradient, vqe_optimize

__all__: Final[Tuple[str, ...]] = (
    'Convention',
    'aim_fermionic_matrix',
    'ansatz_circuit',
    'build_aim_qubit_hamiltonian',
    'creation_operators',
    'energy',
    'exact_energy',
    'exact_ground_energy',
    'parameter_shift_gradient',
    'single_particle_energy',
    'vqe_optimize',
)
