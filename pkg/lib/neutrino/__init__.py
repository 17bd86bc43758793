"""Neutrino oscillation among three flavors on two qubits."""

from typing import Final, Tuple

from .oscillation import (
    FLAVOR_NOTE,
    evolution_phases,
    first_minimum,
    oscillation_circuit,
    oscillation_scan,
    theoretical_probabilities,
)

__all__: Final[Tuple[str, ...]] = (
    'FLAVOR_NOTE',
    'evolution_phases',
    'first_minimum',
    'oscillation_circuit',
    'oscillation_scan',
    'theoretical_probabilities',
)
