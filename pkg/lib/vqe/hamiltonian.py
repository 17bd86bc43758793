"""The Anderson impurity model with one bath site, on four qubits.

Modes are ordered ``d↑, c↑, d↓, c↓`` and mapped by Jordan-Wigner with
``a†_k = Z_0…Z_{k-1}·σ⁻_k``, an occupied mode being ``|1⟩``.
"""

from functools import reduce
from typing import Final, List, Union

from numpy import asarray, complex128, eye, kron, ndarray
from numpy.linalg import eigvalsh

from ..errors import ConfigError
from ..models.observable import PAULIS, Observable
from ..models.vqe import AimParams
from .._compat import StrEnum

#
NUM_MODES: Final[int] = 4
SIGMA_MINUS: Final[ndarray] = asarray([[0, 0], [1, 0]], dtype=complex128)


class Convention(StrEnum):
    # the qubit Hamiltonian as usually quoted for this model
    PRINTED = 'printed'
    # every fermionic term mapped through the creation operators
    FERMIONIC = 'fermionic'


def _convention(value: Union[Convention, str], /) -> Convention:
    try:
        return Convention(value)
    except ValueError as error:
        raise ConfigError(
            'Unknown Hamiltonian convention `%s`; use one of %s.'
            % (value, ', '.join(Convention))
        ) from error


def build_aim_qubit_hamiltonian(
    p: AimParams,
    /,
    convention: Union[Convention, str] = Convention.PRINTED,
) -> Observable:
    if _convention(convention) == Convention.PRINTED:
        constant = p.eps_d + p.eps1 - 2 * p.mu
        z_impurity = -(p.eps_d - p.mu + 2 * p.u) / 2
    else:
        constant = p.eps1 + p.eps_d - p.mu + p.u / 4
        z_impurity = -(p.eps_d - p.mu) / 2 - p.u / 4
    return Observable(
        [
            (constant, 'IIII'),
            (z_impurity, 'ZIII'),
            (z_impurity, 'IIZI'),
            (-p.eps1 / 2, 'IZII'),
            (-p.eps1 / 2, 'IIIZ'),
            (p.u / 4, 'ZIZI'),
            (p.v / 2, 'XXII'),
            (p.v / 2, 'YYII'),
            (p.v / 2, 'IIXX'),
            (p.v / 2, 'IIYY'),
        ]
    )


def creation_operators() -> List[ndarray]:
    """``a†`` for the four modes as ``16×16`` matrices."""
    operators = []
    for mode in range(NUM_MODES):
        factors = (
            [PAULIS['Z']] * mode
            + [SIGMA_MINUS]
            + [eye(2, dtype=complex128)] * (NUM_MODES - mode - 1)
        )
        operators.append(reduce(kron, factors))
    return operators


def aim_fermionic_matrix(p: AimParams, /) -> ndarray:
    """The model built from the creation operators directly."""
    d_up, c_up, d_down, c_down = creation_operators()

    def number(a: ndarray, /) -> ndarray:
        return a @ a.conj().T

    def hop(c: ndarray, d: ndarray, /) -> ndarray:
        term = c @ d.conj().T
        return term + term.conj().T

    return (
        p.eps1 * (number(c_up) + number(c_down))
        + (p.eps_d - p.mu) * (number(d_up) + number(d_down))
        + p.u * number(d_up) @ number(d_down)
        + p.v * (hop(c_up, d_up) + hop(c_down, d_down))
    )


def exact_ground_energy(
    p: AimParams,
    /,
    convention: Union[Convention, str] = Convention.PRINTED,
) -> float:
    """The lowest eigenvalue of the ``16×16`` qubit Hamiltonian."""
    matrix = build_aim_qubit_hamiltonian(p, convention).matrix()
    return float(eigvalsh(matrix)[0])


def single_particle_energy(p: AimParams, /) -> float:
    """Ground energy of the ``U = 0`` model by filling one-body levels."""
    if p.u:
        raise ConfigError('Single-particle filling needs U = 0.')
    levels = eigvalsh(asarray([[p.eps_d - p.mu, p.v], [p.v, p.eps1]]))
    return float(2 * levels.clip(max=0).sum())
