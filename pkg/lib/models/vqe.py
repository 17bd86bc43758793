"""Anderson impurity parameters and variational traces."""

from dataclasses import dataclass, field
from math import isfinite
from typing import Any, Dict, Final, Iterable, List, Optional, Tuple

from ..errors import ConfigError
from .._compat import Self

#
NUM_PARAMETERS: Final[int] = 7
ANSATZ_LAYOUT: Final[str] = 'ry(0..3) cz(0,1) cz(0,2) cz(0,3) ry(1..3)'


@dataclass(init=False, frozen=True)
class AimParams(object):
    """One impurity site and one bath site, in units of the hopping."""

    eps_d: Final[float]
    eps1: Final[float]
    mu: Final[float]
    u: Final[float]
    v: Final[float]

    def __init__(
        self: Self,
        /,
        eps_d: float = 0.0,
        eps1: float = 0.0,
        mu: float = 0.0,
        u: float = 2.0,
        v: float = 1.0,
    ) -> None:
        values = dict(eps_d=eps_d, eps1=eps1, mu=mu, u=u, v=v)
        for name, value in values.items():
            value = float(value)
            if not isfinite(value):
                raise ConfigError(
                    '`%s` must be finite, got %r.' % (name, value)
                )
            object.__setattr__(self, name, value)

    def to_dict(self: Self, /) -> Dict[str, float]:
        return dict(
            eps_d=self.eps_d,
            eps1=self.eps1,
            mu=self.mu,
            u=self.u,
            v=self.v,
        )


@dataclass(init=False, frozen=True)
class AnsatzState(object):
    theta: Final[Tuple[float, ...]]
    layout: Final[str] = field(compare=False)

    def __init__(self: Self, /, theta: Iterable[float]) -> None:
        theta = tuple(float(_) for _ in theta)
        if len(theta) != NUM_PARAMETERS:
            raise ConfigError(
                'The ansatz takes %s angles, got %s.'
                % (NUM_PARAMETERS, len(theta))
            )
        object.__setattr__(self, 'theta', theta)
        object.__setattr__(self, 'layout', ANSATZ_LAYOUT)


@dataclass(frozen=True)
class VqeIteration(object):
    theta: Tuple[float, ...]
    energy: float
    stderr: float
    gradient_norm: float

    def to_dict(self: Self, /) -> Dict[str, Any]:
        row: Dict[str, Any] = dict(
            energy=self.energy,
            stderr=self.stderr,
            gradient_norm=self.gradient_norm,
        )
        row.update(
            ('theta_%s' % (index + 1), value)
            for index, value in enumerate(self.theta)
        )
        return row


@dataclass(init=False, frozen=True)
class VqeTrace(object):
    iterations: Final[Tuple[VqeIteration, ...]]
    exact_energy: Final[float]
    converged: Final[bool]

    def __init__(
        self: Self,
        /,
        iterations: Iterable[VqeIteration],
        exact_energy: float,
        converged: bool = False,
    ) -> None:
        iterations = tuple(iterations)
        if not iterations:
            raise ConfigError('A VQE trace needs at least one iteration.')
        object.__setattr__(self, 'iterations', iterations)
        object.__setattr__(self, 'exact_energy', float(exact_energy))
        object.__setattr__(self, 'converged', bool(converged))

    @property
    def best(self: Self, /) -> VqeIteration:
        return min(self.iterations, key=lambda _: _.energy)

    @property
    def final(self: Self, /) -> VqeIteration:
        return self.iterations[-1]

    def relative_error(self: Self, /) -> Optional[float]:
        if not self.exact_energy:
            return None
        return abs(self.best.energy - self.exact_energy) / abs(
            self.exact_energy
        )

    def to_rows(self: Self, /) -> List[Dict[str, Any]]:
        return [
            dict(iteration=index, **_.to_dict())
            for index, _ in enumerate(self.iterations)
        ]
