"""Unweighted graphs and the Ising problems derived from them."""

from dataclasses import dataclass, field
from typing import Final, FrozenSet, Iterable, Optional, Tuple

from numpy import asarray, float64, ndarray, zeros

from ..errors import ConfigError
from .._compat import Self

Edge = Tuple[int, int]


@dataclass(init=False, frozen=True)
class Graph(object):
    """A simple graph over nodes ``0..n-1``; every edge weighs 1."""

    n: Final[int]
    edges: Final[FrozenSet[Edge]]

    def __init__(self: Self, /, n: int, edges: Iterable[Edge] = ()) -> None:
        if not isinstance(n, int) or n < 1:
            raise ConfigError('A graph needs at least one node, got %r.' % n)
        normalized = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ConfigError('Self-loop on node %s.' % a)
            if not (0 <= a < n and 0 <= b < n):
                raise ConfigError(
                    'Edge (%s, %s) leaves a %s node graph.' % (a, b, n)
                )
            normalized.add((min(a, b), max(a, b)))
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'edges', frozenset(normalized))

    @classmethod
    def complete(cls, n: int, /) -> Self:
        return cls(n, ((a, b) for a in range(n) for b in range(a + 1, n)))

    @classmethod
    def cycle(cls, n: int, /) -> Self:
        return cls(n, ((_, (_ + 1) % n) for _ in range(n)))

    @property
    def num_edges(self: Self, /) -> int:
        return len(self.edges)

    def sorted_edges(self: Self, /) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def adjacency(self: Self, /) -> ndarray:
        matrix = zeros((self.n, self.n), dtype=float64)
        for a, b in self.edges:
            matrix[a, b] = matrix[b, a] = 1
        return matrix

    def relabel(self: Self, permutation: Iterable[int], /) -> 'Graph':
        """Move node ``i`` to ``permutation[i]``."""
        permutation = tuple(permutation)
        if sorted(permutation) != list(range(self.n)):
            raise ConfigError('Invalid node permutation %s.' % (permutation,))
        return Graph(
            self.n,
            ((permutation[a], permutation[b]) for a, b in self.edges),
        )


@dataclass(init=False, frozen=True)
class IsingProblem(object):
    """``H = Σ_{i<j} J_ij Z_i Z_j + Σ_i h_i Z_i`` on ``num_spins`` spins.

    Spin ``+1`` is the bit ``0``.
    """

    couplings: Final[ndarray] = field(compare=False)
    fields: Final[ndarray] = field(compare=False)
    num_spins: Final[int]

    def __init__(
        self: Self,
        /,
        couplings: Iterable[Iterable[float]],
        fields: Optional[Iterable[float]] = None,
    ) -> None:
        couplings = asarray([list(_) for _ in couplings], dtype=float64)
        num_spins = len(couplings)
        if couplings.shape != (num_spins, num_spins) or not num_spins:
            raise ConfigError('Couplings must form a square matrix.')
        if (couplings != couplings.T).any() or couplings.diagonal().any():
            raise ConfigError('Couplings must be symmetric, zero diagonal.')
        fields = (
            zeros(num_spins)
            if fields is None
            else asarray(list(fields), dtype=float64)
        )
        if fields.shape != (num_spins,):
            raise ConfigError('One field per spin is required.')
        for _ in (couplings, fields):
            _.setflags(write=False)
        object.__setattr__(self, 'couplings', couplings)
        object.__setattr__(self, 'fields', fields)
        object.__setattr__(self, 'num_spins', num_spins)

    @classmethod
    def from_graph(cls, graph: Graph, /) -> Self:
        return cls(graph.adjacency())

    def coupled_pairs(self: Self, /) -> Tuple[Tuple[int, int, float], ...]:
        m = self.num_spins
        return tuple(
            (a, b, float(self.couplings[a, b]))
            for a in range(m)
            for b in range(a + 1, m)
            if self.couplings[a, b]
        )

    def energy(self: Self, spins: Iterable[int], /) -> float:
        spins = asarray(list(spins), dtype=float64)
        return float(spins @ self.couplings @ spins / 2 + self.fields @ spins)
