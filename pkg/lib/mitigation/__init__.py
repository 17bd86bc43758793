"""Readout error mitigation, randomized compiling and zero-noise
extrapolation, with bootstrap error bars."""

from typing import Final, Tuple

from .bootstrap import bootstrap_stderr
from .rem import apply_rem, cached_calibration, calibrate_rem
from .twirl import pauli_twirl_cz
from .zne import fold_global, zne_extrapolate
from .estimate import (
    estimate_distribution,
    estimate_observable,
    estimate_outcomes,
    estimate_pauli,
    estimate_terms,
)

__all__: Final[Tuple[str, ...]] = (
    'apply_rem',
    'bootstrap_stderr',
    'cached_calibration',
    'calibrate_rem',
    'estimate_distribution',
    'estimate_observable',
    'estimate_outcomes',
    'estimate_pauli',
    'estimate_terms',
    'fold_global',
    'pauli_twirl_cz',
    'zne_extrapolate',
)
