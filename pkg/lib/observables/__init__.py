"""Expectation values from shots, measurement grouping, state tomography
and entanglement entropy."""

from typing import Final, Tuple

from .measure import (
    basis_change,
    expectation_from_counts,
    measurement_circuit,
    parity_signs,
)
from .grouping import group_qubitwise
from .entropy import von_neumann_entropy
from .tomography import state_tomography

__all__: Final[Tuple[str, ...]] = (
    'basis_change',
    'expectation_from_counts',
    'group_qubitwise',
    'measurement_circuit',
    'parity_signs',
    'state_tomography',
    'von_neumann_entropy',
)
