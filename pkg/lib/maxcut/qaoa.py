"""Single-layer QAOA on Ising problems with a virtual node."""

from dataclasses import dataclass, field
from itertools import count
from logging import getLogger
from math import pi
from typing import Dict, Final, Optional, Tuple

from numpy import arange, float64, int64, linspace, ndarray
from scipy.optimize import minimize

from ..backend import Backend
from ..errors import ConfigError
from ..mitigation.estimate import estimate_distribution
from ..models.circuit import Circuit, Gate
from ..models.graph import Graph, IsingProblem
from ..models.mitigation import Mitigation, MitigationTag
from ..models.state import Counts
from ..utils.seeds import derive_seed
from .._compat import Self

#
logger = getLogger('QAOA')

GRID_POINTS: Final[int] = 16
MAX_EVALUATIONS: Final[int] = 100
GAMMA_RANGE: Final[Tuple[float, float]] = (0.0, pi)
BETA_RANGE: Final[Tuple[float, float]] = (0.0, pi / 2)


def reduce_virtual_node(g: Graph, /) -> IsingProblem:
    """Fix the last node to ``|1⟩`` and keep ``n-1`` spins.

    Its couplings become fields: ``H' = Σ J_ij Z_i Z_j - Σ_i J_in Z_i``.
    """
    if g.n < 2:
        raise ConfigError('The virtual node needs at least two nodes.')
    adjacency = g.adjacency()
    return IsingProblem(adjacency[:-1, :-1], -adjacency[:-1, -1])


def qaoa_circuit(
    problem: IsingProblem,
    gamma: float,
    beta: float,
    /,
) -> Circuit:
    """``|+⟩^m``, then ``exp(-iγH')`` and ``exp(-iβΣX)``, then a readout."""
    m = problem.num_spins
    gates = [Gate.h(_) for _ in range(m)]
    for a, b, coupling in problem.coupled_pairs():
        gates += [
            Gate.cnot(a, b),
            Gate.rz(2 * gamma * coupling, b),
            Gate.cnot(a, b),
        ]
    for qubit, value in enumerate(problem.fields.tolist()):
        if value:
            gates.append(Gate.rz(2 * gamma * value, qubit))
    gates += [Gate.r(2 * beta, 0.0, _) for _ in range(m)]
    gates.append(Gate.measure(*range(m)))
    return Circuit(m, gates, dict(label='qaoa'))


def spin_energies(problem: IsingProblem, /) -> ndarray:
    """``H'`` of every basis index, qubit 0 being the most significant."""
    m = problem.num_spins
    indices = arange(2**m, dtype=int64)
    spins = [
        1 - 2 * ((indices >> (m - 1 - _)) & 1).astype(float64)
        for _ in range(m)
    ]
    energies = sum(value * spins[_] for _, value in enumerate(problem.fields))
    for a, b, coupling in problem.coupled_pairs():
        energies = energies + coupling * spins[a] * spins[b]
    return energies


@dataclass(init=False, frozen=True)
class QaoaResult(object):
    gamma: Final[float]
    beta: Final[float]
    energy: Final[float]
    counts: Final[Counts] = field(compare=False)
    distribution: Final[ndarray] = field(compare=False, repr=False)
    evaluations: Final[int]

    def __init__(
        self: Self,
        /,
        gamma: float,
        beta: float,
        energy: float,
        counts: Counts,
        distribution: ndarray,
        evaluations: int,
    ) -> None:
        object.__setattr__(self, 'gamma', float(gamma))
        object.__setattr__(self, 'beta', float(beta))
        object.__setattr__(self, 'energy', float(energy))
        object.__setattr__(self, 'counts', counts)
        object.__setattr__(self, 'distribution', distribution)
        object.__setattr__(self, 'evaluations', int(evaluations))

    @property
    def most_probable(self: Self, /) -> str:
        width = self.counts.num_bits
        return format(int(self.distribution.argmax()), '0%sb' % width)


def optimize_qaoa(
    problem: IsingProblem,
    shots_per_step: int,
    backend: Backend,
    rng_seed: int,
    /,
    mitigation: Optional[Mitigation] = None,
    grid: int = GRID_POINTS,
    max_evaluations: int = MAX_EVALUATIONS,
) -> QaoaResult:
    """Grid search over ``(γ, β)`` refined by Nelder-Mead.

    Every evaluation samples ``shots_per_step`` shots; the cost is the mean
    sampled energy after the configured readout mitigation.
    """
    if shots_per_step < 1:
        raise ConfigError('QAOA needs at least one shot per step.')
    mitigation = (mitigation or Mitigation()).without(MitigationTag.ZNE)
    energies = spin_energies(problem)
    steps = count()
    cache: Dict[Tuple[float, float], float] = {}

    def sample(gamma: float, beta: float, /) -> Tuple[Counts, ndarray]:
        return estimate_distribution(
            qaoa_circuit(problem, gamma, beta),
            shots_per_step,
            backend,
            mitigation,
            derive_seed(rng_seed, 'qaoa', next(steps)),
        )

    def cost(x: ndarray, /) -> float:
        gamma, beta = float(x[0]), float(x[1])
        _, distribution = sample(gamma, beta)
        cache[(gamma, beta)] = float(distribution @ energies)
        return cache[(gamma, beta)]

    for gamma in linspace(*GAMMA_RANGE, grid, endpoint=False):
        for beta in linspace(*BETA_RANGE, grid, endpoint=False):
            cost((gamma, beta))
    start = min(cache, key=cache.get)
    logger.debug('Best grid point %s with energy %.4f.', start, cache[start])
    if max_evaluations:
        minimize(
            cost,
            start,
            method='Nelder-Mead',
            options=dict(maxfev=max_evaluations, xatol=1e-3, fatol=1e-3),
        )
    gamma, beta = min(cache, key=cache.get)
    counts, distribution = sample(gamma, beta)
    result = QaoaResult(
        gamma,
        beta,
        distribution @ energies,
        counts,
        distribution,
        next(steps),
    )
    logger.info(
        'QAOA optimum γ=%.4f, β=%.4f, energy %.4f after %s evaluations.',
        result.gamma,
        result.beta,
        result.energy,
        result.evaluations,
    )
    return result
