"""Kauffman brackets and Jones polynomials of three-strand braids."""

from typing import Final, Tuple

from .algebra import (
    CLOSED_BRACKETS,
    CLOSED_JONES,
    TLRep,
    admissible_grid,
    braid_matrix,
    is_admissible,
    jones_polynomial,
    kauffman_bracket_closure,
    tl_generators,
)
from .trace import estimate_knot_trace, knot_point, trace_circuit

__all__: Final[Tuple[str, ...]] = (
    'CLOSED_BRACKETS',
    'CLOSED_JONES',
    'TLRep',
    'admissible_grid',
    'braid_matrix',
    'estimate_knot_trace',
    'is_admissible',
    'jones_polynomial',
    'kauffman_bracket_closure',
    'knot_point',
    'tl_generators',
    'trace_circuit',
)
