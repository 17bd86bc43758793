"""Maxcut by single-layer QAOA and the Q-score benchmark."""

from typing import Final, Tuple

from .graph import (
    brute_force_maxcut,
    cut_value,
    cut_vector,
    format_edge_list,
    parse_edge_list,
    random_graph,
)
from .qaoa import (
    QaoaResult,
    optimize_qaoa,
    qaoa_circuit,
    reduce_virtual_node,
    spin_energies,
)
from .qscore import QScorePolicy, approximation_ratio, qscore_run
from .solve import maxcut_points, solve_maxcut

__all__: Final[Tuple[str, ...]] = (
    'QScorePolicy',
    'QaoaResult',
    'approximation_ratio',
    'brute_force_maxcut',
    'cut_value',
    'cut_vector',
    'format_edge_list',
    'maxcut_points',
    'optimize_qaoa',
    'parse_edge_list',
    'qaoa_circuit',
    'qscore_run',
    'random_graph',
    'reduce_virtual_node',
    'solve_maxcut',
    'spin_energies',
)
