"""Mixing matrix, mass splittings and oscillation points."""

from dataclasses import dataclass, field
from typing import Any, Dict, Final, Iterable, Optional, Sequence, Tuple

from numpy import asarray, complex128, float64, ndarray
from numpy.linalg import norm
from scipy.linalg import polar

from ..errors import ConfigError
from .._compat import Self

#
PRINTED_PMNS: Final[Tuple[Tuple[complex, ...], ...]] = (
    (0.8255, 0.5445, -0.142 + 0.0434j, 0),
    (-0.2709 + 0.02739j, 0.6057 + 0.0181j, 0.7475, 0),
    (0.4938 + 0.0237j, -0.5798 + 0.0157j, 0.6475, 0),
    (0, 0, 0, 1),
)
MAX_DEVIATION: Final[float] = 5e-3
PHASE_CONSTANT: Final[float] = 2.534
FLAVORS: Final[Tuple[str, ...]] = ('e', 'mu', 'tau', 'x')


@dataclass(init=False, frozen=True)
class PmnsMatrix(object):
    """The printed mixing matrix and its nearest unitary (polar factor).

    The fourth row and column embed a decoupled fictitious flavor.
    """

    u: Final[ndarray] = field(compare=False, repr=False)
    u_exact: Final[ndarray] = field(compare=False, repr=False)
    deviation: Final[float]

    def __init__(
        self: Self,
        /,
        u: Optional[Sequence[Sequence[complex]]] = None,
        *,
        max_deviation: float = MAX_DEVIATION,
    ) -> None:
        u = asarray(PRINTED_PMNS if u is None else u, dtype=complex128)
        if u.shape != (4, 4):
            raise ConfigError('A mixing matrix is 4x4, got %s.' % (u.shape,))
        u_exact, _ = polar(u)
        deviation = float(norm(u - u_exact, 2))
        if deviation > max_deviation:
            raise ConfigError(
                'Mixing matrix is %.3g away from unitary (limit %.3g).'
                % (deviation, max_deviation)
            )
        u.setflags(write=False)
        u_exact.setflags(write=False)
        object.__setattr__(self, 'u', u)
        object.__setattr__(self, 'u_exact', u_exact)
        object.__setattr__(self, 'deviation', deviation)


@dataclass(init=False, frozen=True)
class MassSplittings(object):
    """Squared mass differences in eV²."""

    dm21sq: Final[float]
    dm31sq: Final[float]

    def __init__(
        self: Self,
        /,
        dm21sq: float = 7.39e-5,
        dm31sq: float = 2.45e-3,
    ) -> None:
        if not 0 < dm21sq < dm31sq:
            raise ConfigError(
                'Mass splittings need 0 < dm21sq < dm31sq, got %r and %r.'
                % (dm21sq, dm31sq)
            )
        object.__setattr__(self, 'dm21sq', float(dm21sq))
        object.__setattr__(self, 'dm31sq', float(dm31sq))


@dataclass(init=False, frozen=True)
class OscillationPoint(object):
    L_over_E: Final[float]
    probabilities: Final[Tuple[float, float, float]]
    stderrs: Final[Tuple[float, float, float]]
    theory: Final[Tuple[float, float, float]]
    leakage: Final[float]

    def __init__(
        self: Self,
        /,
        L_over_E: float,
        probabilities: Iterable[float],
        stderrs: Iterable[float],
        theory: Iterable[float],
    ) -> None:
        values = asarray(list(probabilities), float64)
        probabilities = tuple(values[:3])
        if any(not 0 <= _ <= 1 for _ in probabilities):
            raise ConfigError(
                'Probabilities out of [0, 1]: %s.' % (probabilities,)
            )
        object.__setattr__(self, 'L_over_E', float(L_over_E))
        object.__setattr__(
            self, 'probabilities', tuple(map(float, probabilities))
        )
        object.__setattr__(self, 'stderrs', tuple(map(float, stderrs))[:3])
        object.__setattr__(self, 'theory', tuple(map(float, theory))[:3])
        object.__setattr__(
            self, 'leakage', float(values[3]) if len(values) > 3 else 0.0
        )

    def to_dict(self: Self, /) -> Dict[str, Any]:
        row: Dict[str, Any] = dict(L_over_E=self.L_over_E)
        for flavor, value, stderr in zip(
            FLAVORS, self.probabilities, self.stderrs
        ):
            row['p_%s' % flavor] = value
            row['p_%s_stderr' % flavor] = stderr
        for flavor, value in zip(FLAVORS, self.theory):
            row['theory_%s' % flavor] = value
        row['p_x'] = self.leakage
        return row
