"""Bell-type experiments: the CHSH scan and the GHZ suite."""

from typing import Final, Tuple

from .chsh import chsh_point, chsh_scan, chsh_state_circuit, chsh_theory
from .ghz import (
    compare_calibrations,
    ghz5_circuit,
    ghz_entropies,
    ghz_state,
    mermin_estimate,
    mermin_monomials,
)

__all__: Final[Tuple[str, ...]] = (
    'chsh_point',
    'chsh_scan',
    'chsh_state_circuit',
    'chsh_theory',
    'compare_calibrations',
    'ghz5_circuit',
    'ghz_entropies',
    'ghz_state',
    'mermin_estimate',
    'mermin_monomials',
)
