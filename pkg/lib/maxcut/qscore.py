"""The Q-score benchmark over random Maxcut instances."""

from logging import getLogger
from typing import Dict, Final, Iterable, Optional, Tuple

from numpy import asarray, float64, sqrt

from ..backend import Backend
from ..errors import ConfigError
from ..mitigation.estimate import estimate_distribution
from ..models.graph import Graph
from ..models.mitigation import Mitigation, MitigationTag
from ..models.results import QScoreReport
from ..utils.parallel import parallel_map
from ..utils.seeds import derive_seed, make_rng
from .graph import brute_force_maxcut, cut_vector, random_graph
from .qaoa import (
    GRID_POINTS,
    MAX_EVALUATIONS,
    optimize_qaoa,
    qaoa_circuit,
    reduce_virtual_node,
)
from .._compat import StrEnum

#
logger = getLogger('QScore')

DEFAULT_SHOTS: Final[int] = 2048
DEFAULT_INSTANCES: Final[int] = 100
EDGE_PROBABILITY: Final[float] = 0.5


class QScorePolicy(StrEnum):
    QAOA = 'qaoa'
    RANDOM = 'random'
    OPTIMAL = 'optimal'


def average_cut(
    g: Graph,
    policy: QScorePolicy,
    shots_per_step: int,
    backend: Backend,
    seed: int,
    /,
    mitigation: Optional[Mitigation] = None,
    grid: int = GRID_POINTS,
    max_evaluations: int = MAX_EVALUATIONS,
) -> float:
    """The expected cut of the answers the policy samples."""
    if policy == QScorePolicy.OPTIMAL:
        return float(brute_force_maxcut(g)[0])
    problem = reduce_virtual_node(g)
    if policy == QScorePolicy.RANDOM:
        _, distribution = estimate_distribution(
            qaoa_circuit(problem, 0.0, 0.0),
            shots_per_step,
            backend,
            (mitigation or Mitigation()).without(MitigationTag.ZNE),
            seed,
        )
    else:
        distribution = optimize_qaoa(
            problem,
            shots_per_step,
            backend,
            seed,
            mitigation,
            grid,
            max_evaluations,
        ).distribution
    return float(distribution @ cut_vector(g))


def approximation_ratio(
    g: Graph,
    average: float,
    /,
) -> Optional[float]:
    """``(C_avg - C_rand) / (C_best - C_rand)`` with ``C_rand = |E|/2``.

    ``None`` when the best cut does not beat a random one.
    """
    random_cut = g.num_edges / 2
    best = brute_force_maxcut(g)[0]
    if best <= random_cut:
        return None
    return (average - random_cut) / (best - random_cut)


async def qscore_run(
    sizes: Iterable[int],
    instances_per_size: int,
    shots_per_step: int,
    edge_probability: float,
    backend: Backend,
    rng_seed: int,
    /,
    policy: QScorePolicy = QScorePolicy.QAOA,
    mitigation: Optional[Mitigation] = None,
    grid: int = GRID_POINTS,
    max_evaluations: int = MAX_EVALUATIONS,
) -> QScoreReport:
    """Average ``β(n)`` over random ``G(n, p)`` instances of every size.

    The virtual node lets an ``n``-node graph run on ``n-1`` qubits.
    """
    policy = QScorePolicy(policy)
    sizes = tuple(sizes)
    limit = backend.topology.num_qubits + 1
    for size in sizes:
        if not 2 <= size <= limit:
            raise ConfigError(
                'Q-score sizes must lie in [2, %s], got %s.' % (limit, size)
            )
    if instances_per_size < 1:
        raise ConfigError('Q-score needs at least one instance per size.')

    def run(item: Tuple[int, int], /) -> Optional[float]:
        size, instance = item
        g = random_graph(
            size,
            edge_probability,
            make_rng(rng_seed, 'graph', size, instance),
        )
        average = average_cut(
            g,
            policy,
            shots_per_step,
            backend,
            derive_seed(rng_seed, 'instance', size, instance),
            mitigation,
            grid,
            max_evaluations,
        )
        ratio = approximation_ratio(g, average)
        if ratio is None:
            logger.warning(
                '[%s] Skipping a degenerate %s node instance.', instance, size
            )
        else:
            logger.debug('[%s] β(%s) = %.4f.', instance, size, ratio)
        return ratio

    items = [(s, i) for s in sizes for i in range(instances_per_size)]
    ratios = dict(zip(items, await parallel_map(run, items, label='instance')))
    means: Dict[int, Optional[float]] = {}
    stderrs: Dict[int, Optional[float]] = {}
    counts: Dict[int, int] = {}
    skipped: Dict[int, int] = {}
    for size in sizes:
        values = asarray(
            [
                ratios[(size, _)]
                for _ in range(instances_per_size)
                if ratios[(size, _)] is not None
            ],
            dtype=float64,
        )
        counts[size] = len(values)
        skipped[size] = instances_per_size - len(values)
        means[size] = float(values.mean()) if len(values) else None
        stderrs[size] = (
            float(values.std(ddof=1) / sqrt(len(values)))
            if len(values) > 1
            else None
        )
        logger.info(
            'β(%s) = %s over %s instances.', size, means[size], counts[size]
        )
    return QScoreReport(
        means, counts, skipped, shots_per_step, str(policy), stderrs
    )
