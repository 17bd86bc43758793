from logging import getLogger
from typing import Any, Dict, Iterable, List, Optional, Tuple

from anyio.to_thread import run_sync

from ..backend import Backend
from ..models.graph import Graph
from ..models.mitigation import Mitigation
from .graph import brute_force_maxcut, cut_value, cut_vector
from .qaoa import (
    GRID_POINTS,
    MAX_EVALUATIONS,
    optimize_qaoa,
    reduce_virtual_node,
)

#
logger = getLogger('Maxcut')


def maxcut_points(
    g: Graph,
    distribution: Iterable[float],
    /,
) -> List[Dict[str, Any]]:
    """One row per assignment of the real nodes, virtual node appended."""
    cuts = cut_vector(g).tolist()
    width = '0%sb' % (g.n - 1)
    return [
        dict(
            bitstring=format(index, width) + '1',
            probability=float(probability),
            probability_stderr=None,
            cut=cuts[index],
        )
        for index, probability in enumerate(distribution)
    ]


async def solve_maxcut(
    g: Graph,
    shots_per_step: int,
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
    grid: int = GRID_POINTS,
    max_evaluations: int = MAX_EVALUATIONS,
) -> Tuple[List[Dict[str, Any]], Dict[str, Any]]:
    """Run QAOA on ``g`` and read the answer off the most probable state."""
    result = await run_sync(
        lambda: optimize_qaoa(
            reduce_virtual_node(g),
            shots_per_step,
            backend,
            seed,
            mitigation,
            grid,
            max_evaluations,
        )
    )
    best, optima = brute_force_maxcut(g)
    answer = result.most_probable + '1'
    cut = cut_value(g, answer)
    logger.info(
        'Most probable assignment %s cuts %s of %s edges (optimum %s).',
        answer,
        cut,
        g.num_edges,
        best,
    )
    summary = dict(
        nodes=g.n,
        edges=[[a + 1, b + 1] for a, b in g.sorted_edges()],
        gamma=result.gamma,
        beta=result.beta,
        energy=result.energy,
        evaluations=result.evaluations,
        answer=answer,
        cut=cut,
        optimum=best,
        optimal_assignments=list(optima),
        solved=cut == best,
    )
    return maxcut_points(g, result.distribution), summary
