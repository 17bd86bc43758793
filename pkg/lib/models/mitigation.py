from dataclasses import dataclass, field
from functools import reduce
from math import isfinite
from typing import (
    AbstractSet,
    Dict,
    Final,
    Iterable,
    Mapping,
    Optional,
    Tuple,
)

from numpy import allclose, asarray, float64, kron, ndarray

from ..errors import ConfigError, MitigationError
from .._compat import Self, StrEnum

#
COLUMN_ATOL: Final[float] = 1e-9
DEFAULT_REM_SHOTS: Final[int] = 10_000
DEFAULT_RESAMPLES: Final[int] = 1000
MIN_RESAMPLES: Final[int] = 100


class MitigationTag(StrEnum):
    REM = 'REM'
    RC = 'RC'
    ZNE = 'ZNE'


class RemMode(StrEnum):
    CORRELATED = 'correlated'
    LOCAL = 'local'


@dataclass(init=False, frozen=True)
class MitigatedValue(object):
    value: Final[float]
    stderr: Final[float]
    method_tags: Final[AbstractSet[MitigationTag]]

    def __init__(
        self: Self,
        /,
        value: float,
        stderr: float = 0.0,
        method_tags: Iterable[MitigationTag] = (),
    ) -> None:
        value, stderr = float(value), float(stderr)
        if not isfinite(value):
            raise MitigationError('Mitigated value is not finite.')
        if not isfinite(stderr) or stderr < 0:
            raise MitigationError('Invalid standard error %r.' % stderr)
        object.__setattr__(self, 'value', value)
        object.__setattr__(self, 'stderr', stderr)
        object.__setattr__(
            self,
            'method_tags',
            frozenset(MitigationTag(_) for _ in method_tags),
        )

    def __add__(self: Self, other: 'MitigatedValue', /) -> 'MitigatedValue':
        """Sum of independent estimates (errors add in quadrature)."""
        return MitigatedValue(
            self.value + other.value,
            (self.stderr**2 + other.stderr**2) ** 0.5,
            self.method_tags | other.method_tags,
        )

    def scale(self: Self, factor: float, /) -> 'MitigatedValue':
        return MitigatedValue(
            factor * self.value, abs(factor) * self.stderr, self.method_tags
        )

    def to_dict(self: Self, /) -> Dict[str, object]:
        return dict(
            value=self.value,
            stderr=self.stderr,
            methods=sorted(self.method_tags),
        )


@dataclass(init=False, frozen=True)
class RemCalibration(object):
    """Column-stochastic assignment matrices measured on basis states.

    Column ``b`` of the correlated matrix is the outcome distribution of the
    prepared state ``|b⟩``; in local mode one 2x2 matrix is kept per qubit
    and the full matrix is their Kronecker product (qubit 0 first).
    """

    mode: Final[RemMode]
    matrices: Final[Tuple[ndarray, ...]] = field(compare=False)
    shots_per_state: Final[int]
    num_qubits: Final[int]

    def __init__(
        self: Self,
        /,
        mode: RemMode,
        matrices: Iterable[ndarray],
        shots_per_state: int,
    ) -> None:
        mode = RemMode(mode)
        matrices = tuple(asarray(_, dtype=float64).copy() for _ in matrices)
        if shots_per_state < 1:
            raise MitigationError('Calibration needs at least one shot.')
        if not matrices:
            raise MitigationError('Calibration holds no matrices.')
        if mode == RemMode.CORRELATED and len(matrices) != 1:
            raise MitigationError('Correlated mode keeps a single matrix.')
        for index, matrix in enumerate(matrices):
            dim = matrix.shape[0]
            if (
                matrix.ndim != 2
                or matrix.shape != (dim, dim)
                or dim & (dim - 1)
                or (mode == RemMode.LOCAL and dim != 2)
            ):
                raise MitigationError(
                    '[%s] Invalid assignment matrix shape %s.'
                    % (index, matrix.shape)
                )
            if (matrix < 0).any() or not allclose(
                matrix.sum(axis=0), 1, rtol=0, atol=COLUMN_ATOL
            ):
                raise MitigationError(
                    '[%s] Assignment matrix is not column-stochastic.' % index
                )
            matrix.setflags(write=False)
        object.__setattr__(self, 'mode', mode)
        object.__setattr__(self, 'matrices', matrices)
        object.__setattr__(self, 'shots_per_state', int(shots_per_state))
        object.__setattr__(
            self,
            'num_qubits',
            len(matrices)
            if mode == RemMode.LOCAL
            else matrices[0].shape[0].bit_length() - 1,
        )

    @property
    def matrix(self: Self, /) -> ndarray:
        return reduce(kron, self.matrices)

    def restrict(self: Self, qubits: Iterable[int], /) -> 'RemCalibration':
        """Return the local calibration of a subset of qubits."""
        if self.mode != RemMode.LOCAL:
            raise MitigationError('Only local calibrations can be restricted.')
        return RemCalibration(
            self.mode,
            (self.matrices[_] for _ in qubits),
            self.shots_per_state,
        )


@dataclass(init=False, frozen=True)
class Mitigation(object):
    """The mitigation block of an experiment configuration."""

    rem: Final[bool]
    rem_mode: Final[RemMode]
    rem_shots: Final[int]
    rc: Final[int]
    zne: Final[Tuple[int, ...]]
    bootstrap: Final[int]

    def __init__(
        self: Self,
        /,
        rem: bool = False,
        rem_mode: RemMode = RemMode.CORRELATED,
        rem_shots: int = DEFAULT_REM_SHOTS,
        rc: int = 0,
        zne: Iterable[int] = (),
        bootstrap: int = DEFAULT_RESAMPLES,
    ) -> None:
        zne = tuple(int(_) for _ in zne)
        if any(_ < 1 or not _ % 2 for _ in zne):
            raise ConfigError(
                'ZNE scales must be odd and positive: %s.' % (zne,)
            )
        if len(set(zne)) == 1 or len(set(zne)) != len(zne):
            raise ConfigError('ZNE needs distinct scales: %s.' % (zne,))
        if rc < 0:
            raise ConfigError('RC randomizations must be non-negative.')
        if rem_shots < 1:
            raise ConfigError('REM calibration needs at least one shot.')
        if bootstrap < MIN_RESAMPLES:
            raise ConfigError(
                'Bootstrap needs at least %s resamples.' % MIN_RESAMPLES
            )
        try:
            rem_mode = RemMode(rem_mode)
        except ValueError as error:
            raise ConfigError(str(error)) from error
        object.__setattr__(self, 'rem', bool(rem))
        object.__setattr__(self, 'rem_mode', rem_mode)
        object.__setattr__(self, 'rem_shots', int(rem_shots))
        object.__setattr__(self, 'rc', int(rc))
        object.__setattr__(self, 'zne', zne)
        object.__setattr__(self, 'bootstrap', int(bootstrap))

    @classmethod
    def parse(cls, text: Optional[str], /) -> Self:
        """Parse a ``rem,rc,zne`` style flag list such as ``rem+rc+zne``."""
        flags = {
            _.strip().lower()
            for _ in (text or '').replace('+', ',').split(',')
            if _.strip() and _.strip().lower() != 'none'
        }
        unknown = flags - {'rem', 'rc', 'zne'}
        if unknown:
            raise ConfigError(
                'Unknown mitigation flags: %s.' % ', '.join(sorted(unknown))
            )
        return cls(
            rem='rem' in flags,
            rc=30 if 'rc' in flags else 0,
            zne=(1, 3, 5) if 'zne' in flags else (),
        )

    @classmethod
    def from_dict(cls, data: Mapping[str, object], /) -> Self:
        unknown = set(data) - {
            'rem',
            'rem_mode',
            'rem_shots',
            'rc',
            'zne',
            'bootstrap',
        }
        if unknown:
            raise ConfigError(
                'Unknown mitigation keys: %s.' % ', '.join(sorted(unknown))
            )
        return cls(**data)

    def to_dict(self: Self, /) -> Dict[str, object]:
        return dict(
            rem=self.rem,
            rem_mode=str(self.rem_mode),
            rem_shots=self.rem_shots,
            rc=self.rc,
            zne=list(self.zne),
            bootstrap=self.bootstrap,
        )

    @property
    def tags(self: Self, /) -> AbstractSet[MitigationTag]:
        return frozenset(
            tag
            for tag, on in (
                (MitigationTag.REM, self.rem),
                (MitigationTag.RC, self.rc > 0),
                (MitigationTag.ZNE, bool(self.zne)),
            )
            if on
        )

    def without(self: Self, /, *tags: MitigationTag) -> 'Mitigation':
        """Return a copy with the given methods switched off."""
        return Mitigation(
            rem=self.rem and MitigationTag.REM not in tags,
            rem_mode=self.rem_mode,
            rem_shots=self.rem_shots,
            rc=0 if MitigationTag.RC in tags else self.rc,
            zne=() if MitigationTag.ZNE in tags else self.zne,
            bootstrap=self.bootstrap,
        )
