from functools import partial
from logging import getLogger
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

from anyio import CapacityLimiter, create_task_group
from anyio.to_thread import run_sync

T = TypeVar('T')
R = TypeVar('R')

#
logger = getLogger('Parallel')


async def parallel_map(
    func: Callable[..., R],
    items: Iterable[T],
    /,
    *args: object,
    limit: Optional[int] = None,
    label: str = 'task',
) -> List[R]:
    """Run ``func(item, *args)`` for every item in worker threads.

    Results keep the order of ``items`` regardless of completion order.
    """
    items: Sequence[T] = list(items)
    results: List[Optional[R]] = [None] * len(items)
    limiter = CapacityLimiter(limit) if limit else None

    async def worker(index: int, item: T, /) -> None:
        logger.debug('[%s] Starting %s.', index, label)
        results[index] = await run_sync(
            partial(func, item, *args), limiter=limiter
        )
        logger.debug('[%s] Finished %s.', index, label)

    async with create_task_group() as tg:
        for index, item in enumerate(items):
            tg.start_soon(worker, index, item)
    return results
