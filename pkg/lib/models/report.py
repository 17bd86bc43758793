"""Experiment configurations and the reports they produce."""

from dataclasses import dataclass, field
from datetime import datetime
from typing import (
    Any,
    Dict,
    Final,
    Iterable,
    List,
    Mapping,
    Optional,
)

from ..errors import ConfigError
from ._mixins import Timestamped
from .mitigation import Mitigation
from .._compat import Self, StrEnum

#
TOOL_VERSION: Final[str] = '0.1.0'
NOISELESS: Final[str] = 'noiseless'


class Experiment(StrEnum):
    CHSH = 'chsh'
    GHZ = 'ghz'
    MERMIN = 'mermin'
    MAXCUT = 'maxcut'
    QSCORE = 'qscore'
    NEUTRINO = 'neutrino'
    JONES = 'jones'
    VQE = 'vqe'
    QUTRIT_FIT = 'qutrit-fit'
    TRANSPILE = 'transpile'


#
EXPERIMENT_PARAMS: Final[Mapping[Experiment, frozenset]] = {
    Experiment.CHSH: frozenset({'points', 'thetas'}),
    Experiment.GHZ: frozenset({'compare', 'tomography'}),
    Experiment.MERMIN: frozenset(),
    Experiment.MAXCUT: frozenset({'edges', 'nodes', 'edge_file'}),
    Experiment.QSCORE: frozenset(
        {'sizes', 'instances', 'edge_probability', 'policy'}
    ),
    Experiment.NEUTRINO: frozenset({'points', 'lmax'}),
    Experiment.JONES: frozenset({'compare', 'knot', 'thetas'}),
    Experiment.VQE: frozenset(
        {'eps_d', 'eps1', 'mu', 'u', 'v', 'max_iters', 'exact', 'convention'}
    ),
    Experiment.QUTRIT_FIT: frozenset({'trace', 'delays', 'noise'}),
    Experiment.TRANSPILE: frozenset({'input', 'output'}),
}
CONFIG_KEYS: Final[frozenset] = frozenset(
    {'experiment', 'backend', 'shots', 'seed', 'mitigation', 'params'}
)


@dataclass(init=False, frozen=True)
class ExperimentConfig(object):
    """A validated experiment configuration.

    ``backend`` is ``noiseless`` or a noise profile given by bundled name or
    by path.
    """

    experiment: Final[Experiment]
    backend: Final[str]
    shots: Final[Optional[int]]
    seed: Final[int]
    mitigation: Final[Mitigation]
    params: Final[Mapping[str, Any]] = field(compare=False)

    def __init__(
        self: Self,
        /,
        experiment: Experiment,
        backend: str = NOISELESS,
        shots: Optional[int] = None,
        seed: int = 0,
        mitigation: Optional[Mitigation] = None,
        params: Optional[Mapping[str, Any]] = None,
    ) -> None:
        try:
            experiment = Experiment(experiment)
        except ValueError as error:
            raise ConfigError(
                'Unknown experiment %r.' % (experiment,)
            ) from error
        params = dict(params or {})
        unknown = set(params) - EXPERIMENT_PARAMS[experiment]
        if unknown:
            raise ConfigError(
                'Unknown `%s` parameters: %s.'
                % (experiment, ', '.join(sorted(unknown)))
            )
        if shots is not None and (not isinstance(shots, int) or shots < 1):
            raise ConfigError('Shots must be a positive integer: %r.' % shots)
        if not isinstance(seed, int) or seed < 0:
            raise ConfigError('Seed must be a non-negative integer.')
        object.__setattr__(self, 'experiment', experiment)
        object.__setattr__(self, 'backend', str(backend or NOISELESS))
        object.__setattr__(self, 'shots', shots)
        object.__setattr__(self, 'seed', seed)
        object.__setattr__(self, 'mitigation', mitigation or Mitigation())
        object.__setattr__(self, 'params', params)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], /) -> Self:
        if not isinstance(data, Mapping):
            raise ConfigError('Config must be a mapping.')
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise ConfigError(
                'Unknown config keys: %s.' % ', '.join(sorted(unknown))
            )
        if 'experiment' not in data:
            raise ConfigError('Config names no experiment.')
        mitigation = data.get('mitigation')
        return cls(
            data['experiment'],
            data.get('backend', NOISELESS),
            data.get('shots'),
            data.get('seed', 0),
            None if mitigation is None else Mitigation.from_dict(mitigation),
            data.get('params'),
        )

    def to_dict(self: Self, /) -> Dict[str, Any]:
        return dict(
            experiment=str(self.experiment),
            backend=self.backend,
            shots=self.shots,
            seed=self.seed,
            mitigation=self.mitigation.to_dict(),
            params=dict(self.params),
        )

    def merge(self: Self, /, **overrides: Any) -> 'ExperimentConfig':
        """Return a copy where every non-``None`` override wins."""
        data = self.to_dict()
        params = dict(data.pop('params'))
        for key, value in overrides.items():
            if value is None:
                continue
            if key in CONFIG_KEYS:
                data[key] = value
            else:
                params[key] = value
        data['params'] = params
        if isinstance(data['mitigation'], Mitigation):
            data['mitigation'] = data['mitigation'].to_dict()
        return ExperimentConfig.from_dict(data)


@dataclass(init=False, frozen=True)
class ExperimentReport(Timestamped):
    """The serializable outcome of one experiment run.

    Every point is a flat mapping; numeric estimates carry a matching
    ``*stderr`` entry or an explicit ``None``.
    """

    config: Final[ExperimentConfig]
    points: Final[List[Dict[str, Any]]] = field(compare=False)
    summary: Final[Dict[str, Any]] = field(compare=False)
    metadata: Final[Dict[str, Any]] = field(compare=False)
    version: Final[str]
    started_at: Final[datetime] = field(compare=False)
    finished_at: Final[Optional[datetime]] = field(compare=False)

    def __init__(
        self: Self,
        /,
        config: ExperimentConfig,
        points: Iterable[Mapping[str, Any]] = (),
        summary: Optional[Mapping[str, Any]] = None,
        metadata: Optional[Mapping[str, Any]] = None,
        *,
        version: str = TOOL_VERSION,
        started_at: Optional[datetime] = None,
        finished_at: Optional[datetime] = None,
    ) -> None:
        object.__setattr__(self, 'config', config)
        object.__setattr__(self, 'points', [dict(_) for _ in points])
        object.__setattr__(self, 'summary', dict(summary or {}))
        object.__setattr__(self, 'metadata', dict(metadata or {}))
        object.__setattr__(self, 'version', version)
        object.__setattr__(self, 'started_at', started_at or self.now())
        object.__setattr__(self, 'finished_at', finished_at)

    @property
    def experiment(self: Self, /) -> Experiment:
        return self.config.experiment

    @property
    def seed(self: Self, /) -> int:
        return self.config.seed

    def finish(self: Self, /) -> 'ExperimentReport':
        return ExperimentReport(
            self.config,
            self.points,
            self.summary,
            self.metadata,
            version=self.version,
            started_at=self.started_at,
            finished_at=self.now(),
        )

    def to_dict(self: Self, /) -> Dict[str, Any]:
        return dict(
            experiment=str(self.experiment),
            version=self.version,
            seed=self.seed,
            config=self.config.to_dict(),
            points=self.points,
            summary=self.summary,
            metadata=self.metadata,
            started_at=self.started_at.isoformat(),
            finished_at=self.finished_at.isoformat()
            if self.finished_at
            else None,
            elapsed=self.elapsed,
        )

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], /) -> Self:
        return cls(
            ExperimentConfig.from_dict(data['config']),
            data.get('points', ()),
            data.get('summary'),
            data.get('metadata'),
            version=data.get('version', TOOL_VERSION),
            started_at=cls.parse_time(data.get('started_at')),
            finished_at=cls.parse_time(data.get('finished_at')),
        )
