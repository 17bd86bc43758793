from typing import Callable, Union

from numpy import asarray, float64, ndarray

from ..errors import MitigationError
from ..models.mitigation import DEFAULT_RESAMPLES, MIN_RESAMPLES
from ..models.state import Counts
from ..utils.seeds import make_rng

Statistic = Callable[[Counts], Union[float, ndarray]]


def bootstrap_stderr(
    counts: Counts,
    statistic: Statistic,
    /,
    resamples: int = DEFAULT_RESAMPLES,
    rng_seed: int = 0,
) -> Union[float, ndarray]:
    """Standard deviation of ``statistic`` over multinomial resamples.

    A vector-valued statistic gets one standard error per entry.
    """
    if not counts.shots:
        raise MitigationError('Cannot bootstrap counts without shots.')
    if resamples < MIN_RESAMPLES:
        raise MitigationError(
            'Bootstrap needs at least %s resamples, got %s.'
            % (MIN_RESAMPLES, resamples)
        )
    keys = list(counts.table)
    frequencies = asarray(list(counts.table.values()), dtype=float64)
    frequencies /= counts.shots
    draws = make_rng(rng_seed, 'bootstrap').multinomial(
        counts.shots, frequencies, size=resamples
    )
    values = asarray(
        [statistic(Counts(dict(zip(keys, _)))) for _ in draws],
        dtype=float64,
    )
    spread = values.std(axis=0, ddof=1)
    return float(spread) if spread.ndim == 0 else spread
