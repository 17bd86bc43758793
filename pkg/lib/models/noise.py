"""Noise profiles and the qutrit relaxation records."""

from dataclasses import dataclass, field
from math import isfinite
from typing import (
    Dict,
    Final,
    Iterable,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from numpy import allclose, asarray, eye, float64, ndarray

from ..errors import NoiseError
from .._compat import Self

#
STOCHASTIC_ATOL: Final[float] = 1e-12
POPULATION_ATOL: Final[float] = 1e-9
PROFILE_KEYS: Final[frozenset] = frozenset(
    {
        'label',
        'p1',
        'p2',
        'amplitude_damping',
        'dephasing',
        'readout',
        'edge_p2',
        'cz_phase',
        'overrotation',
    }
)


def _probability(name: str, value: float, /) -> float:
    value = float(value)
    if not 0 <= value < 1:
        raise NoiseError('`%s` must lie in [0, 1), got %r.' % (name, value))
    return value


def _confusion(index: int, matrix: Sequence[Sequence[float]], /) -> ndarray:
    matrix = asarray(matrix, dtype=float64)
    if matrix.shape != (2, 2):
        raise NoiseError('[%s] Readout matrix must be 2x2.' % index)
    if (matrix < 0).any() or not allclose(
        matrix.sum(axis=1), 1, rtol=0, atol=STOCHASTIC_ATOL
    ):
        raise NoiseError('[%s] Readout matrix is not row-stochastic.' % index)
    matrix = matrix.copy()
    matrix.setflags(write=False)
    return matrix


@dataclass(init=False, frozen=True)
class NoiseProfile(object):
    """A calibration set: per-gate channels and per-qubit readout confusion.

    Readout matrices are row-stochastic: ``readout[q][a, b]`` is the
    probability of reading ``b`` on qubit ``q`` prepared in ``a``. An empty
    ``readout`` means perfect readout on every qubit. ``edge_p2`` overrides
    ``p2`` for single couplers, and ``cz_phase`` and ``overrotation`` add the
    coherent errors targeted by randomized compiling.
    """

    label: Final[str]
    p1: Final[float]
    p2: Final[float]
    amplitude_damping: Final[float]
    dephasing: Final[float]
    readout: Final[Tuple[ndarray, ...]] = field(compare=False)
    edge_p2: Final[Mapping[Tuple[int, int], float]]
    cz_phase: Final[float]
    overrotation: Final[float]

    def __init__(
        self: Self,
        /,
        label: str = 'noiseless',
        p1: float = 0.0,
        p2: float = 0.0,
        amplitude_damping: float = 0.0,
        dephasing: float = 0.0,
        readout: Iterable[Sequence[Sequence[float]]] = (),
        edge_p2: Optional[Mapping[Tuple[int, int], float]] = None,
        *,
        cz_phase: float = 0.0,
        overrotation: float = 0.0,
    ) -> None:
        overrides: Dict[Tuple[int, int], float] = {}
        for (a, b), value in (edge_p2 or {}).items():
            key = (min(int(a), int(b)), max(int(a), int(b)))
            overrides[key] = _probability('edge_p2', value)
        if not (isfinite(cz_phase) and isfinite(overrotation)):
            raise NoiseError('Coherent error angles must be finite.')
        object.__setattr__(self, 'label', str(label))
        object.__setattr__(self, 'p1', _probability('p1', p1))
        object.__setattr__(self, 'p2', _probability('p2', p2))
        object.__setattr__(
            self,
            'amplitude_damping',
            _probability('amplitude_damping', amplitude_damping),
        )
        object.__setattr__(
            self, 'dephasing', _probability('dephasing', dephasing)
        )
        object.__setattr__(
            self,
            'readout',
            tuple(_confusion(i, m) for i, m in enumerate(readout)),
        )
        object.__setattr__(self, 'edge_p2', overrides)
        object.__setattr__(self, 'cz_phase', float(cz_phase))
        object.__setattr__(self, 'overrotation', float(overrotation))

    @classmethod
    def symmetric_readout(
        cls,
        flip: float,
        num_qubits: int,
        /,
        label: str = 'symmetric readout',
        **kwargs: object,
    ) -> Self:
        """Return a profile flipping every measured bit with ``flip``."""
        matrix = [[1 - flip, flip], [flip, 1 - flip]]
        return cls(label, readout=[matrix] * num_qubits, **kwargs)

    @classmethod
    def from_dict(cls, data: Mapping[str, object], /) -> Self:
        unknown = set(data) - PROFILE_KEYS
        if unknown:
            raise NoiseError(
                'Unknown noise profile keys: %s.' % ', '.join(sorted(unknown))
            )
        data = dict(data)
        edges = {}
        for key, value in dict(data.pop('edge_p2', None) or {}).items():
            a, b = (int(_) for _ in str(key).split('-'))
            edges[(a, b)] = value
        return cls(
            data.pop('label', 'noise profile'),
            data.pop('p1', 0.0),
            data.pop('p2', 0.0),
            data.pop('amplitude_damping', 0.0),
            data.pop('dephasing', 0.0),
            data.pop('readout', ()),
            edges,
            cz_phase=data.pop('cz_phase', 0.0),
            overrotation=data.pop('overrotation', 0.0),
        )

    def to_dict(self: Self, /) -> Dict[str, object]:
        return dict(
            label=self.label,
            p1=self.p1,
            p2=self.p2,
            amplitude_damping=self.amplitude_damping,
            dephasing=self.dephasing,
            readout=[_.tolist() for _ in self.readout],
            edge_p2={'%s-%s' % k: v for k, v in self.edge_p2.items()},
            cz_phase=self.cz_phase,
            overrotation=self.overrotation,
        )

    @property
    def is_stochastic(self: Self, /) -> bool:
        """Whether evolution needs a density matrix."""
        return bool(
            self.p1
            or self.p2
            or self.amplitude_damping
            or self.dephasing
            or any(self.edge_p2.values())
        )

    @property
    def is_coherent(self: Self, /) -> bool:
        return bool(self.cz_phase or self.overrotation)

    @property
    def has_readout_error(self: Self, /) -> bool:
        return any(not allclose(_, eye(2)) for _ in self.readout)

    @property
    def is_noiseless(self: Self, /) -> bool:
        return not (
            self.is_stochastic or self.is_coherent or self.has_readout_error
        )

    def p2_for(self: Self, a: int, b: int, /) -> float:
        return self.edge_p2.get((min(a, b), max(a, b)), self.p2)

    def readout_matrix(self: Self, qubit: int, /) -> ndarray:
        if not self.readout:
            return eye(2)
        if not 0 <= qubit < len(self.readout):
            raise NoiseError(
                'Profile `%s` has no readout matrix for qubit %s.'
                % (self.label, qubit)
            )
        return self.readout[qubit]


@dataclass(init=False, frozen=True)
class QutritRates(object):
    """Relaxation rates of a three-level system in ``1/µs``."""

    g10: Final[float]
    g21: Final[float]
    g20: Final[float]
    stderr: Final[Optional[Tuple[float, float, float]]] = field(compare=False)

    def __init__(
        self: Self,
        /,
        g10: float,
        g21: float,
        g20: float,
        stderr: Optional[Iterable[float]] = None,
    ) -> None:
        rates = tuple(float(_) for _ in (g10, g21, g20))
        if not all(isfinite(_) and _ > 0 for _ in rates):
            raise NoiseError('Qutrit rates must be positive: %s.' % (rates,))
        object.__setattr__(self, 'g10', rates[0])
        object.__setattr__(self, 'g21', rates[1])
        object.__setattr__(self, 'g20', rates[2])
        object.__setattr__(
            self,
            'stderr',
            None if stderr is None else tuple(float(_) for _ in stderr),
        )

    @classmethod
    def from_lifetimes(cls, t10: float, t21: float, t20: float, /) -> Self:
        """Build the rates from inverse rates given in ``µs``."""
        return cls(1 / t10, 1 / t21, 1 / t20)

    @property
    def lifetimes(self: Self, /) -> Tuple[float, float, float]:
        return (1 / self.g10, 1 / self.g21, 1 / self.g20)

    @property
    def lifetime_stderr(self: Self, /) -> Optional[Tuple[float, ...]]:
        if self.stderr is None:
            return None
        return tuple(
            s / g**2
            for s, g in zip(self.stderr, (self.g10, self.g21, self.g20))
        )


@dataclass(init=False, frozen=True)
class QutritTrace(object):
    """Populations ``(P0, P1, P2)`` of a qutrit prepared in ``|2⟩``."""

    delays: Final[ndarray] = field(compare=False)
    populations: Final[ndarray] = field(compare=False)

    def __init__(
        self: Self,
        /,
        delays: Iterable[float],
        populations: Iterable[Sequence[float]],
    ) -> None:
        delays = asarray(list(delays), dtype=float64)
        populations = asarray(list(populations), dtype=float64)
        if delays.ndim != 1 or populations.shape != (len(delays), 3):
            raise NoiseError(
                'Trace needs one population triple per delay, got %s.'
                % (populations.shape,)
            )
        if (delays < 0).any():
            raise NoiseError('Delays must be non-negative.')
        if (populations < -POPULATION_ATOL).any() or (
            populations > 1 + POPULATION_ATOL
        ).any():
            raise NoiseError('Populations must lie in [0, 1].')
        if not allclose(populations.sum(axis=1), 1, rtol=0, atol=1e-9):
            raise NoiseError('Population triples must sum to one.')
        for _ in (delays, populations):
            _.setflags(write=False)
        object.__setattr__(self, 'delays', delays)
        object.__setattr__(self, 'populations', populations)

    def __len__(self: Self, /) -> int:
        return len(self.delays)
