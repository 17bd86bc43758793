from logging import getLogger
from typing import Final, Iterable, Optional, Tuple

from numpy import arange, int64, ndarray, zeros
from numpy.random import Generator

from ..errors import ConfigError
from ..models.graph import Graph

#
logger = getLogger('Maxcut')

MAX_BRUTE_FORCE_NODES: Final[int] = 24


def cut_value(g: Graph, assignment: str, /) -> int:
    """Count the edges whose endpoints carry different bits."""
    if len(assignment) != g.n or set(assignment) - {'0', '1'}:
        raise ConfigError(
            'Assignment %r does not label %s nodes.' % (assignment, g.n)
        )
    return sum(1 for a, b in g.edges if assignment[a] != assignment[b])


def cut_vector(g: Graph, /) -> ndarray:
    """Cut values of the ``2^(n-1)`` assignments whose last bit is 1.

    Entry ``i`` labels the first ``n-1`` nodes with the bits of ``i``, node
    0 being the most significant.
    """
    if g.n > MAX_BRUTE_FORCE_NODES:
        raise ConfigError(
            'Brute force is limited to %s nodes, got %s.'
            % (MAX_BRUTE_FORCE_NODES, g.n)
        )
    free = g.n - 1
    indices = arange(2**free, dtype=int64)

    def bit(node: int, /):
        if node == free:
            return 1
        return (indices >> (free - 1 - node)) & 1

    cuts = zeros(2**free, dtype=int64)
    for a, b in g.edges:
        cuts += bit(a) ^ bit(b)
    return cuts


def brute_force_maxcut(g: Graph, /) -> Tuple[int, Tuple[str, ...]]:
    """The maximum cut and every optimal assignment with the last bit 1.

    Fixing the last node halves the ``2^n`` assignments, each cut being
    shared with its complement.
    """
    if g.n == 1:
        return 0, ('1',)
    cuts = cut_vector(g)
    best = int(cuts.max())
    width = '0%sb' % (g.n - 1)
    winners = (cuts == best).nonzero()[0].tolist()
    return best, tuple(format(_, width) + '1' for _ in winners)


def random_graph(n: int, p: float, rng: Generator, /) -> Graph:
    """An Erdős-Rényi ``G(n, p)`` graph, redrawn until it has an edge."""
    if n < 2:
        raise ConfigError('Random graphs need at least two nodes.')
    if not 0 < p <= 1:
        raise ConfigError('Edge probability must lie in (0, 1].')
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    while True:
        keep = rng.random(len(pairs)) < p
        if keep.any():
            return Graph(n, (pair for pair, on in zip(pairs, keep) if on))
        logger.debug('Redrawing an edgeless G(%s, %s) graph.', n, p)


def parse_edge_list(
    lines: Iterable[str],
    /,
    nodes: Optional[int] = None,
) -> Graph:
    """Read ``a b`` pairs of 1-based node labels, ``#`` starting comments.

    The node count defaults to the largest label.
    """
    edges = []
    for index, line in enumerate(lines):
        line = line.split('#')[0].replace(',', ' ').strip()
        if not line:
            continue
        try:
            a, b = (int(_) for _ in line.split())
        except ValueError as error:
            raise ConfigError(
                '[%s] Invalid edge line %r.' % (index, line)
            ) from error
        if min(a, b) < 1:
            raise ConfigError('[%s] Node labels start at 1.' % index)
        edges.append((a - 1, b - 1))
    if not edges and nodes is None:
        raise ConfigError('Edge list is empty.')
    return Graph(nodes or max(max(_) for _ in edges) + 1, edges)


def format_edge_list(g: Graph, /) -> str:
    return ''.join('%s %s\n' % (a + 1, b + 1) for a, b in g.sorted_edges())
