from dataclasses import dataclass
from logging import Logger, getLogger
from pathlib import Path
from typing import (
    Any,
    Dict,
    Final,
    Iterable,
    List,
    Mapping,
    Optional,
    Tuple,
    Union,
)

from anyio import Path as AsyncPath
from anyio.to_thread import run_sync

from .backend import Backend
from .bell import (
    chsh_scan,
    compare_calibrations,
    ghz_entropies,
    mermin_estimate,
)
from .bell.chsh import DEFAULT_POINTS as CHSH_POINTS
from .bell.chsh import default_thetas
from .errors import ConfigError, FitError
from .io import (
    emit_plot_data,
    read_circuit,
    read_rows,
    write_circuit,
    write_report,
)
from .jones import admissible_grid, estimate_knot_trace
from .maxcut import QScorePolicy, parse_edge_list, qscore_run, solve_maxcut
from .maxcut.qscore import DEFAULT_INSTANCES, EDGE_PROBABILITY
from .models.circuit import GateKind
from .models.knot import BraidWord, KnotReport
from .models.mitigation import Mitigation, MitigationTag
from .models.noise import QutritRates
from .models.report import Experiment, ExperimentConfig, ExperimentReport
from .models.topology import NativeCircuit
from .models.vqe import AimParams
from .neutrino import FLAVOR_NOTE, first_minimum, oscillation_scan
from .neutrino.oscillation import DEFAULT_LMAX
from .neutrino.oscillation import DEFAULT_POINTS as NEUTRINO_POINTS
from .noise import (
    bundled_profiles,
    fit_qutrit_rates,
    read_qutrit_trace,
    simulate_qutrit_trace,
)
from .noise.qutrit import REFERENCE_LIFETIMES, reference_trace
from .transpiler import transpile
from .utils.filter_type import filter_type
from .vqe import Convention, exact_ground_energy, vqe_optimize
from .vqe.optimize import DEFAULT_ITERATIONS
from ._compat import Self

#
DEFAULT_SHOTS: Final[Mapping[Experiment, int]] = {
    Experiment.CHSH: 10_000,
    Experiment.GHZ: 3500,
    Experiment.MERMIN: 10_000,
    Experiment.MAXCUT: 2048,
    Experiment.QSCORE: 2048,
    Experiment.NEUTRINO: 5000,
    Experiment.JONES: 20_000,
    Experiment.VQE: 5000,
}
QSCORE_SIZES: Final[Tuple[int, ...]] = (3, 4, 5, 6)

Outcome = Tuple[List[Dict[str, Any]], Dict[str, Any], Dict[str, Any]]

__all__: Final[Tuple[str, ...]] = ('Workbench', 'parse_sizes')


def parse_sizes(value: Union[str, int, Iterable[int]], /) -> Tuple[int, ...]:
    """Read ``3..6`` (inclusive), ``3,4,5`` or a list of sizes."""
    if isinstance(value, str) and '..' in value:
        low, _, high = value.partition('..')
        try:
            return tuple(range(int(low), int(high) + 1))
        except ValueError as error:
            raise ConfigError('Invalid size range %r.' % value) from error
    if isinstance(value, str):
        value = [_ for _ in value.split(',') if _.strip()]
    return filter_type(value, int, 'sizes')


@dataclass(init=False, frozen=True)
class Workbench(object):
    """Run experiment configs and write their reports.

    ``output`` is a directory receiving ``<experiment>.json`` and
    ``<experiment>.csv`` per config, or the report path itself when a
    single config ends in ``.json``. Without ``output`` nothing is written.
    """

    output: Final[Optional[Path]]
    plot: Final[bool]

    _logger: Final[Logger]
    _configs: Final[Tuple[ExperimentConfig, ...]]

    def __init__(
        self: Self,
        /,
        config: Union[ExperimentConfig, Iterable[ExperimentConfig]],
        output: Union[str, Path, None] = None,
        plot: bool = True,
        *,
        logger_name: Optional[str] = None,
    ) -> None:
        object.__setattr__(
            self, 'output', Path(output) if output is not None else None
        )
        object.__setattr__(self, 'plot', bool(plot))

        object.__setattr__(
            self, '_logger', getLogger(logger_name or self.__class__.__name__)
        )
        object.__setattr__(
            self,
            '_configs',
            filter_type(config, ExperimentConfig, 'config'),
        )

    @property
    def configs(self: Self, /) -> Tuple[ExperimentConfig, ...]:
        return self._configs

    def report_path(self: Self, index: int, /) -> Optional[Path]:
        if self.output is None:
            return None
        if self.output.suffix == '.json' and len(self._configs) == 1:
            return self.output
        experiment = str(self._configs[index].experiment)
        names = [str(_.experiment) for _ in self._configs]
        if names.count(experiment) > 1:
            experiment = '%s-%s' % (experiment, index)
        return self.output / ('%s.json' % experiment)

    async def run(self: Self, /) -> List[ExperimentReport]:
        if not self._configs:
            raise ConfigError('No experiments to run!')
        self._logger.info('%s started!', self.__class__.__name__)
        reports = []
        for index, config in enumerate(self._configs):
            self._logger.info(
                '[%s] Running `%s` on `%s` with seed %s.',
                index,
                config.experiment,
                config.backend,
                config.seed,
            )
            report = await self.execute(config)
            self._logger.info(
                '[%s] `%s` finished in %.2fs.',
                index,
                config.experiment,
                report.elapsed,
            )
            if (path := self.report_path(index)) is not None:
                await write_report(report, path)
                if self.plot and report.points:
                    await emit_plot_data(report, path.with_suffix('.csv'))
            reports.append(report)
        self._logger.info('%s finished!', self.__class__.__name__)
        return reports

    async def execute(
        self: Self,
        config: ExperimentConfig,
        /,
    ) -> ExperimentReport:
        started_at = ExperimentReport.now()
        backend = Backend(config.backend)
        shots = config.shots or DEFAULT_SHOTS.get(config.experiment, 0)
        match config.experiment:
            case Experiment.CHSH:
                outcome = await self._chsh(config, backend, shots)
            case Experiment.GHZ:
                outcome = await self._ghz(config, backend, shots)
            case Experiment.MERMIN:
                outcome = await self._mermin(config, backend, shots)
            case Experiment.MAXCUT:
                outcome = await self._maxcut(config, backend, shots)
            case Experiment.QSCORE:
                outcome = await self._qscore(config, backend, shots)
            case Experiment.NEUTRINO:
                outcome = await self._neutrino(config, backend, shots)
            case Experiment.JONES:
                outcome = await self._jones(config, backend, shots)
            case Experiment.VQE:
                outcome = await self._vqe(config, backend, shots)
            case Experiment.QUTRIT_FIT:
                outcome = await self._qutrit_fit(config)
            case Experiment.TRANSPILE:
                outcome = await self._transpile(config, backend)
        points, summary, metadata = outcome
        metadata.setdefault('backend', backend.name)
        metadata.setdefault('shots', shots or None)
        return ExperimentReport(
            config,
            points,
            summary,
            metadata,
            started_at=started_at,
        ).finish()

    async def _chsh(
        self: Self,
        config: ExperimentConfig,
        backend: Backend,
        shots: int,
        /,
    ) -> Outcome:
        params = config.params
        if 'thetas' in params:
            thetas = filter_type(params['thetas'], float, 'thetas')
        else:
            thetas = default_thetas(int(params.get('points', CHSH_POINTS)))
        points = await chsh_scan(
            thetas, shots, backend, config.mitigation, config.seed
        )
        rows = [_.to_dict() for _ in points]
        summary = dict(
            points=len(rows),
            violations=sum(1 for _ in points if _.violation),
            max_estimate=max(_.estimate.value for _ in points),
            classical_bound=2.0,
        )
        return rows, summary, {}

    async def _ghz(
        self: Self,
        config: ExperimentConfig,
        backend: Backend,
        shots: int,
        /,
    ) -> Outcome:
        params = config.params
        rows: List[Dict[str, Any]] = []
        summary: Dict[str, Any] = {}
        metadata: Dict[str, Any] = {}
        if params.get('tomography', True):
            summary = await ghz_entropies(
                shots,
                backend,
                config.seed,
                config.mitigation.rem,
            )
            for quantity in ('full', '12', '345'):
                rows.append(
                    dict(
                        quantity='entropy_%s' % quantity,
                        value=summary['entropy_%s' % quantity],
                        stderr=None,
                        theory=summary['theory_%s' % quantity],
                    )
                )
            rows.append(
                dict(
                    quantity='fidelity',
                    value=summary['fidelity'],
                    stderr=None,
                    theory=1.0,
                )
            )
        compare = params.get('compare')
        if compare:
            profiles = (
                bundled_profiles()
                if compare is True
                else filter_type(compare, str, 'compare')
            )
            metadata['calibrations'] = await compare_calibrations(
                profiles, shots, config.seed, config.mitigation.rem_shots
            )
        return rows, summary, metadata

    async def _mermin(
        self: Self,
        config: ExperimentConfig,
        backend: Backend,
        shots: int,
        /,
    ) -> Outcome:
        report = await mermin_estimate(
            shots, backend, config.mitigation, config.seed
        )
        return [_.to_dict() for _ in report.monomials], report.summary(), {}

    async def _maxcut(
        self: Self,
        config: ExperimentConfig,
        backend: Backend,
        shots: int,
        /,
    ) -> Outcome:
        params = config.params
        nodes = params.get('nodes')
        if 'edge_file' in params:
            path = AsyncPath(params['edge_file'])
            try:
                text = await path.read_text()
            except OSError as error:
                raise ConfigError(
                    'Cannot read edge file `%s`: %s.' % (path, error)
                ) from error
            lines = text.splitlines()
        elif 'edges' in params:
            edges = params['edges']
            if isinstance(edges, str):
                lines = edges.replace('-', ' ').split(',')
            else:
                lines = ['%s %s' % tuple(_) for _ in edges]
        else:
            raise ConfigError('Maxcut needs `edges` or an `edge_file`.')
        g = parse_edge_list(lines, nodes)
        if g.n - 1 > backend.topology.num_qubits:
            raise ConfigError(
                'A %s node graph does not fit on %s qubits.'
                % (g.n, backend.topology.num_qubits)
            )
        points, summary = await solve_maxcut(
            g, shots, backend, config.mitigation, config.seed
        )
        return points, summary, {}

    async def _qscore(
        self: Self,
        config: ExperimentConfig,
        backend: Backend,
        shots: int,
        /,
    ) -> Outcome:
        params = config.params
        report = await qscore_run(
            parse_sizes(params.get('sizes', QSCORE_SIZES)),
            int(params.get('instances', DEFAULT_INSTANCES)),
            shots,
            float(params.get('edge_probability', EDGE_PROBABILITY)),
            backend,
            config.seed,
            QScorePolicy(params.get('policy', QScorePolicy.QAOA)),
            config.mitigation,
        )
        summary = dict(
            qscore=report.qscore,
            policy=report.policy,
            shots_per_step=report.shots_per_step,
        )
        return list(report.to_rows()), summary, {}

    async def _neutrino(
        self: Self,
        config: ExperimentConfig,
        backend: Backend,
        shots: int,
        /,
    ) -> Outcome:
        params = config.params
        points = await oscillation_scan(
            int(params.get('points', NEUTRINO_POINTS)),
            shots,
            backend,
            config.mitigation.without(MitigationTag.ZNE),
            config.seed,
            float(params.get('lmax', DEFAULT_LMAX)),
        )
        summary = dict(
            points=len(points),
            first_minimum=await run_sync(first_minimum),
            max_p_x=max(_.leakage for _ in points),
        )
        rows = [_.to_dict() for _ in points]
        return rows, summary, dict(flavors=FLAVOR_NOTE)

    async def _jones(
        self: Self,
        config: ExperimentConfig,
        backend: Backend,
        shots: int,
        /,
    ) -> Outcome:
        params = config.params
        word = BraidWord.parse(str(params.get('knot', 'trefoil')))
        thetas = params.get('thetas')
        if thetas is None or isinstance(thetas, int):
            thetas = admissible_grid(*filter_type(thetas, int, 'thetas'))
        else:
            thetas = filter_type(thetas, float, 'thetas')
        variants: Dict[str, Mitigation] = dict(configured=config.mitigation)
        if params.get('compare'):
            variants = dict(
                raw=Mitigation(),
                rem=Mitigation(rem=True),
                configured=config.mitigation
                if config.mitigation.tags
                else Mitigation.parse('rem+rc+zne'),
            )
        results: Dict[str, List[KnotReport]] = {}
        for name, mitigation in variants.items():
            self._logger.info('Estimating `%s` traces (%s).', word, name)
            results[name] = await estimate_knot_trace(
                word, thetas, shots, backend, mitigation, config.seed
            )
        rows = [_.to_dict() for _ in results['configured']]
        summary: Dict[str, Any] = dict(
            braid=str(word), writhe=word.writhe, points=len(rows)
        )
        for name, reports in results.items():
            errors = [abs(_.estimated_trace - _.trace) for _ in reports]
            summary['mean_abs_error_%s' % name] = sum(errors) / len(errors)
            if len(variants) == 1:
                continue
            for row, knot in zip(rows, reports):
                row['re_%s' % name] = knot.re_trace.value
                row['re_%s_stderr' % name] = knot.re_trace.stderr
                row['im_%s' % name] = knot.im_trace.value
                row['im_%s_stderr' % name] = knot.im_trace.stderr
        return rows, summary, {}

    async def _vqe(
        self: Self,
        config: ExperimentConfig,
        backend: Backend,
        shots: int,
        /,
    ) -> Outcome:
        params = config.params
        p = AimParams(
            **{
                key: float(params[key])
                for key in ('eps_d', 'eps1', 'mu', 'u', 'v')
                if key in params
            }
        )
        convention = Convention(params.get('convention', Convention.PRINTED))
        exact = bool(params.get('exact', False))
        trace = await vqe_optimize(
            p,
            None if exact else shots,
            int(params.get('max_iters', DEFAULT_ITERATIONS)),
            backend,
            config.seed,
            config.mitigation.without(MitigationTag.ZNE),
            convention,
        )
        summary = dict(
            final_energy=trace.final.energy,
            final_stderr=trace.final.stderr,
            best_energy=trace.best.energy,
            exact_energy=exact_ground_energy(p, convention),
            relative_error=trace.relative_error(),
            converged=trace.converged,
            iterations=len(trace.iterations),
            gradient_norm=trace.final.gradient_norm,
            convention=str(convention),
        )
        metadata = dict(hamiltonian=p.to_dict(), exact_expectation=exact)
        return trace.to_rows(), summary, metadata

    async def _qutrit_fit(self: Self, config: ExperimentConfig, /) -> Outcome:
        params = config.params
        noise = float(params.get('noise', 0.0))
        if 'trace' in params:
            trace = read_qutrit_trace(await read_rows(params['trace']))
            source = str(params['trace'])
        elif 'delays' in params:
            trace = await run_sync(
                lambda: simulate_qutrit_trace(
                    QutritRates.from_lifetimes(*REFERENCE_LIFETIMES),
                    filter_type(params['delays'], float, 'delays'),
                    noise,
                    config.seed,
                )
            )
            source = 'synthetic'
        else:
            trace = await run_sync(
                lambda: reference_trace(30, noise, config.seed)
            )
            source = 'synthetic'
        try:
            rates = await run_sync(fit_qutrit_rates, trace)
        except FitError as error:
            self._logger.warning('Qutrit fit failed: %s.', error)
            raise
        stderr = rates.lifetime_stderr or (None, None, None)
        summary: Dict[str, Any] = {}
        for name, value, error in zip(
            ('t10', 't21', 't20'), rates.lifetimes, stderr
        ):
            summary[name] = value
            summary['%s_stderr' % name] = error
        rows = [
            dict(delay=delay, p0=p0, p1=p1, p2=p2)
            for delay, (p0, p1, p2) in zip(
                trace.delays.tolist(), trace.populations.tolist()
            )
        ]
        metadata = dict(source=source, reference=list(REFERENCE_LIFETIMES))
        return rows, summary, metadata

    async def _transpile(
        self: Self,
        config: ExperimentConfig,
        backend: Backend,
        /,
    ) -> Outcome:
        params = config.params
        if 'input' not in params:
            raise ConfigError('Transpile needs an `input` circuit.')
        source = Path(params['input'])
        target = Path(
            params.get('output')
            or source.with_name('%s.native%s' % (source.stem, source.suffix))
        )
        circuit = await read_circuit(source)
        if isinstance(circuit, NativeCircuit):
            circuit = circuit.circuit
        native = await run_sync(transpile, circuit, backend.topology)
        await write_circuit(native, target)
        rows = [
            dict(
                stage=stage,
                gates=len(_),
                two_qubit=sum(len(g.qubits) == 2 for g in _.operations()),
                cz=_.count(GateKind.CZ),
            )
            for stage, _ in (('input', circuit), ('native', native.circuit))
        ]
        summary = dict(
            output=str(target),
            layout=list(native.layout),
            initial_layout=list(native.initial_layout),
            final_frames=list(native.final_frames),
        )
        return rows, summary, {}
