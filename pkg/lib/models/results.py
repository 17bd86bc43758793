"""Typed results of the experiment suites and their report rows."""

from dataclasses import dataclass, field
from math import sqrt
from typing import Any, Dict, Final, Iterable, Mapping, Optional, Tuple

from ..errors import ConfigError
from .mitigation import MitigatedValue
from .._compat import Self

#
CHSH_BOUND: Final[float] = 2.0
TSIRELSON_BOUND: Final[float] = 2 * sqrt(2)
MERMIN_BOUND: Final[float] = 4.0
QSCORE_THRESHOLD: Final[float] = 0.2


@dataclass(init=False, frozen=True)
class ChshPoint(object):
    theta: Final[float]
    estimate: Final[MitigatedValue]
    theory: Final[float]
    correlators: Final[Mapping[str, MitigatedValue]] = field(compare=False)

    def __init__(
        self: Self,
        /,
        theta: float,
        estimate: MitigatedValue,
        theory: float,
        correlators: Optional[Mapping[str, MitigatedValue]] = None,
    ) -> None:
        if abs(theory) > TSIRELSON_BOUND + 1e-12:
            raise ConfigError('CHSH theory %r exceeds 2√2.' % theory)
        object.__setattr__(self, 'theta', float(theta))
        object.__setattr__(self, 'estimate', estimate)
        object.__setattr__(self, 'theory', float(theory))
        object.__setattr__(self, 'correlators', dict(correlators or {}))

    @property
    def violation(self: Self, /) -> bool:
        return abs(self.estimate.value) > CHSH_BOUND

    def to_dict(self: Self, /) -> Dict[str, Any]:
        row: Dict[str, Any] = dict(
            theta=self.theta,
            estimate=self.estimate.value,
            stderr=self.estimate.stderr,
            theory=self.theory,
            violation=self.violation,
            methods=sorted(self.estimate.method_tags),
        )
        for name, value in self.correlators.items():
            row[name] = value.value
            row['%s_stderr' % name] = value.stderr
        return row


@dataclass(init=False, frozen=True)
class MonomialEstimate(object):
    label: Final[str]
    sign: Final[int]
    estimate: Final[MitigatedValue]
    theory: Final[float]

    def __init__(
        self: Self,
        /,
        label: str,
        sign: int,
        estimate: MitigatedValue,
        theory: float,
    ) -> None:
        object.__setattr__(self, 'label', label)
        object.__setattr__(self, 'sign', int(sign))
        object.__setattr__(self, 'estimate', estimate)
        object.__setattr__(self, 'theory', float(theory))

    def to_dict(self: Self, /) -> Dict[str, Any]:
        return dict(
            monomial=self.label,
            sign=self.sign,
            estimate=self.estimate.value,
            stderr=self.estimate.stderr,
            theory=self.theory,
        )


@dataclass(init=False, frozen=True)
class MerminReport(object):
    """Every monomial of the Mermin polynomial and their signed sum."""

    monomials: Final[Tuple[MonomialEstimate, ...]]
    aggregate: Final[MitigatedValue]
    theory: Final[float]

    def __init__(
        self: Self,
        /,
        monomials: Iterable[MonomialEstimate],
    ) -> None:
        monomials = tuple(monomials)
        if not monomials:
            raise ConfigError('Mermin report needs monomials.')
        aggregate = MitigatedValue(0.0)
        for _ in monomials:
            aggregate = aggregate + _.estimate.scale(_.sign)
        object.__setattr__(self, 'monomials', monomials)
        object.__setattr__(self, 'aggregate', aggregate)
        object.__setattr__(
            self, 'theory', sum(_.sign * _.theory for _ in monomials)
        )

    @property
    def violation(self: Self, /) -> bool:
        return self.aggregate.value > MERMIN_BOUND

    def summary(self: Self, /) -> Dict[str, Any]:
        return dict(
            mermin=self.aggregate.value,
            mermin_stderr=self.aggregate.stderr,
            theory=self.theory,
            classical_bound=MERMIN_BOUND,
            violation=self.violation,
            methods=sorted(self.aggregate.method_tags),
        )


@dataclass(init=False, frozen=True)
class QScoreReport(object):
    """Approximation ratios ``β(n)`` per graph size."""

    ratios: Final[Mapping[int, Optional[float]]]
    stderrs: Final[Mapping[int, Optional[float]]]
    instances: Final[Mapping[int, int]]
    skipped: Final[Mapping[int, int]]
    shots_per_step: Final[int]
    policy: Final[str]

    def __init__(
        self: Self,
        /,
        ratios: Mapping[int, Optional[float]],
        instances: Mapping[int, int],
        skipped: Mapping[int, int],
        shots_per_step: int,
        policy: str = 'qaoa',
        stderrs: Optional[Mapping[int, Optional[float]]] = None,
    ) -> None:
        object.__setattr__(self, 'ratios', dict(ratios))
        object.__setattr__(self, 'stderrs', dict(stderrs or {}))
        object.__setattr__(self, 'instances', dict(instances))
        object.__setattr__(self, 'skipped', dict(skipped))
        object.__setattr__(self, 'shots_per_step', int(shots_per_step))
        object.__setattr__(self, 'policy', str(policy))

    def passed(self: Self, size: int, /) -> bool:
        ratio = self.ratios.get(size)
        return ratio is not None and ratio > QSCORE_THRESHOLD

    @property
    def qscore(self: Self, /) -> Optional[int]:
        """The largest size whose ratio beats the threshold."""
        return max((_ for _ in self.ratios if self.passed(_)), default=None)

    def to_rows(self: Self, /) -> Iterable[Dict[str, Any]]:
        for size, ratio in sorted(self.ratios.items()):
            yield dict(
                size=size,
                beta=ratio,
                beta_stderr=self.stderrs.get(size),
                instances=self.instances.get(size, 0),
                skipped=self.skipped.get(size, 0),
                passed=self.passed(size),
            )
