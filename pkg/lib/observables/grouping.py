from typing import List, Tuple

from ..models.observable import (
    MeasurementSetting,
    Observable,
    PauliString,
    Term,
)


def group_qubitwise(obs: Observable, /) -> List[MeasurementSetting]:
    """Greedy first-fit grouping of qubit-wise commuting terms.

    Each term joins the first setting whose basis it commutes with
    qubit-wise, widening that basis. Identity terms ride on the first
    setting; an all-identity observable yields one identity setting.
    """
    groups: List[Tuple[PauliString, List[Term]]] = []
    constants: List[Term] = []
    for coefficient, pauli in obs.terms:
        if pauli.is_identity:
            constants.append((coefficient, pauli))
            continue
        for index, (basis, terms) in enumerate(groups):
            if basis.qubitwise_compatible(pauli):
                groups[index] = (basis.merge(pauli), terms)
                terms.append((coefficient, pauli))
                break
        else:
            groups.append((pauli, [(coefficient, pauli)]))
    if not groups:
        groups.append((PauliString('I' * obs.num_qubits), []))
    groups[0][1][:0] = constants
    return [MeasurementSetting(basis, terms) for basis, terms in groups]
