from typing import Final, Union

from numpy import allclose, asarray, complex128, log2, ndarray
from numpy.linalg import eigvalsh

from ..errors import SimulationError
from ..models.state import QuantumState

#
EIGEN_CUTOFF: Final[float] = 1e-15


def von_neumann_entropy(rho: Union[QuantumState, ndarray], /) -> float:
    """``-tr(ρ log₂ ρ)`` in bits, with ``0·log 0 = 0``."""
    if isinstance(rho, QuantumState):
        rho = rho.density_matrix()
    rho = asarray(rho, dtype=complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise SimulationError('Entropy needs a square density matrix.')
    if not allclose(rho, rho.conj().T, atol=1e-9):
        raise SimulationError('Density matrix is not Hermitian.')
    eigenvalues = eigvalsh(rho)
    eigenvalues = eigenvalues[eigenvalues > EIGEN_CUTOFF]
    return max(float(-(eigenvalues * log2(eigenvalues)).sum()), 0.0)
