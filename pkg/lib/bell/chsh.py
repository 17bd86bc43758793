"""The CHSH scan over rotated Bell states."""

from logging import getLogger
from math import cos, pi, sqrt
from typing import Final, Iterable, List, Mapping, Optional, Tuple

from numpy import linspace

from ..backend import Backend
from ..mitigation.estimate import estimate_pauli
from ..models.circuit import Circuit, Gate
from ..models.mitigation import Mitigation
from ..models.observable import PauliString
from ..models.results import ChshPoint
from ..utils.parallel import parallel_map
from ..utils.seeds import derive_seed

#
logger = getLogger('CHSH')

DEFAULT_POINTS: Final[int] = 32
DEFAULT_SHOTS: Final[int] = 10_000
# correlator: (sign inside the correlator, measured string)
CORRELATORS: Final[Mapping[str, Tuple[float, str]]] = {
    'QS': (1.0, 'ZZ'),
    'RS': (-1.0, 'XZ'),
    'RT': (1.0, 'ZZ'),
    'QT': (1.0, 'XZ'),
}
# E(QS) + E(RS) + E(RT) - E(QT)
COMBINATION: Final[Mapping[str, float]] = {
    'QS': 1.0,
    'RS': 1.0,
    'RT': 1.0,
    'QT': -1.0,
}


def chsh_state_circuit(theta: float, /) -> Circuit:
    """``RY(θ)`` on the first qubit of ``(|00⟩+|11⟩)/√2``."""
    return Circuit(
        2,
        [Gate.h(0), Gate.cnot(0, 1), Gate.ry(theta, 0)],
        dict(label='chsh'),
    )


def chsh_theory(theta: float, /) -> float:
    return 2 * sqrt(2) * cos(theta + pi / 4)


def default_thetas(points: int = DEFAULT_POINTS, /) -> List[float]:
    return linspace(0, 2 * pi, points, endpoint=False).tolist()


def chsh_point(
    theta: float,
    shots: int,
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
) -> ChshPoint:
    """Estimate the four correlators at ``θ`` and combine them."""
    circuit = chsh_state_circuit(theta)
    correlators = {}
    for name, (sign, ops) in CORRELATORS.items():
        correlators[name] = estimate_pauli(
            circuit,
            PauliString(ops),
            shots,
            backend,
            mitigation,
            derive_seed(seed, name),
        ).scale(sign)
    total = None
    for name, weight in COMBINATION.items():
        term = correlators[name].scale(weight)
        total = term if total is None else total + term
    return ChshPoint(theta, total, chsh_theory(theta), correlators)


async def chsh_scan(
    thetas: Iterable[float],
    shots: int,
    backend: Backend,
    /,
    mitigation: Optional[Mitigation] = None,
    seed: int = 0,
) -> List[ChshPoint]:
    def run(item: Tuple[int, float], /) -> ChshPoint:
        index, theta = item
        logger.info('[%s] Estimating CHSH at θ=%.4f.', index, theta)
        return chsh_point(
            theta,
            shots,
            backend,
            mitigation,
            derive_seed(seed, 'chsh', index),
        )

    points = await parallel_map(run, enumerate(thetas), label='chsh point')
    violations = sum(1 for _ in points if _.violation)
    logger.info('CHSH violated at %s of %s angles.', violations, len(points))
    return points
