from logging import basicConfig, getLogger
from os import name as os_name
from pathlib import Path
from sys import argv, exit, path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from anyio import run
from asyncclick import (
    Abort,
    Choice,
    FloatRange,
    IntRange,
    UsageError,
    group,
    option,
)
from asyncclick import Path as PathType

if __name__ == '__main__':
    path.append(str(Path(__file__).resolve().parents[1]))

from lib import Workbench
from lib.errors import ConfigError
from lib.io import load_config
from lib.models.mitigation import Mitigation
from lib.models.report import Experiment, ExperimentConfig
from lib.process import summary_frame

#
logger = getLogger('Workbench')

USAGE_EXIT: int = 2
FAILURE_EXIT: int = 1


def _params(experiment: Experiment, /, **kwargs: Any) -> Dict[str, Any]:
    """Drop unset options; empty tuples count as unset."""
    return dict(
        experiment=experiment,
        params={
            key: list(value) if isinstance(value, tuple) else value
            for key, value in kwargs.items()
            if value is not None and value != ()
        },
    )


@group(
    name='workbench',
    chain=True,
    invoke_without_command=True,
    context_settings=dict(token_normalize_func=lambda x: x.lower()),
)
@option(
    '-l',
    '--logging',
    help='The *logging* level to use.',
    default='INFO',
    required=True,
)
@option(
    '-n',
    '--noise',
    help='The noise *profile* to run on: `noiseless`, a bundled name or a '
    'JSON path.',
)
@option(
    '-c',
    '--config',
    help='The JSON experiment *config* to start from.',
    type=PathType(exists=True, dir_okay=False),
)
@option(
    '-s',
    '--shots',
    help='The number of *shots* per circuit.',
    type=IntRange(min=1),
)
@option('--seed', help='The master *seed*.', type=IntRange(min=0))
@option(
    '-m',
    '--mitigation',
    help='The *mitigation* methods, e.g. `rem+rc+zne` or `none`.',
)
@option(
    '-o',
    '--out',
    '--output',
    'output',
    help='The report *output* directory, or a `.json` path for one run.',
    envvar='WORKBENCH_OUTPUT_DIR',
)
@option(
    '--plot/--no-plot',
    default=True,
    help='Whether to write the CSV plot data next to every report.',
)
async def cli(**kwargs: object) -> None:
    pass


@cli.command(name='chsh')
@option(
    '-p',
    '--points',
    help='The number of evenly spaced *angles* in [0, 2π).',
    type=IntRange(min=1),
)
@option(
    '-t',
    '--theta',
    'thetas',
    help='An explicit *angle* to scan.',
    type=float,
    multiple=True,
)
async def chsh(**kwargs: object) -> Dict[str, Any]:
    return _params(Experiment.CHSH, **kwargs)


@cli.command(name='ghz')
@option(
    '--tomography/--no-tomography',
    default=None,
    help='Whether to reconstruct the GHZ state and its entropies.',
)
@option(
    '--compare',
    help='A noise *profile* to compare REM calibrations on.',
    multiple=True,
)
async def ghz(**kwargs: object) -> Dict[str, Any]:
    return _params(Experiment.GHZ, **kwargs)


@cli.command(name='mermin')
async def mermin(**kwargs: object) -> Dict[str, Any]:
    return _params(Experiment.MERMIN, **kwargs)


@cli.command(name='maxcut')
@option('-e', '--edges', help='The *edges* as 1-based pairs, e.g. `1-2,2-3`.')
@option('--nodes', help='The number of *nodes*.', type=IntRange(min=2))
@option(
    '-f',
    '--edge-file',
    help='A file of 1-based *edge* pairs, one per line.',
    type=PathType(exists=True, dir_okay=False),
)
async def maxcut(**kwargs: object) -> Dict[str, Any]:
    return _params(Experiment.MAXCUT, **kwargs)


@cli.command(name='qscore')
@option('--sizes', help='The graph *sizes*, e.g. `3..6` or `3,4,5`.')
@option(
    '-i',
    '--instances',
    help='The number of random *instances* per size.',
    type=IntRange(min=1),
)
@option(
    '--edge-probability',
    help='The *edge probability* of the random graphs.',
    type=FloatRange(min=0, max=1, min_open=True),
)
@option(
    '--policy',
    help='How the angles are chosen.',
    type=Choice(['qaoa', 'random', 'optimal'], case_sensitive=False),
)
async def qscore(**kwargs: object) -> Dict[str, Any]:
    return _params(Experiment.QSCORE, **kwargs)


@cli.command(name='neutrino')
@option(
    '-p',
    '--points',
    help='The number of *L/E* values.',
    type=IntRange(min=1),
)
@option(
    '--lmax',
    help='The largest *L/E* in km/GeV.',
    type=FloatRange(min=0),
)
async def neutrino(**kwargs: object) -> Dict[str, Any]:
    return _params(Experiment.NEUTRINO, **kwargs)


@cli.command(name='jones')
@option(
    '-k',
    '--knot',
    help='A braid word such as `1,1,-2` or `unknot`, `hopf`, `trefoil`.',
)
@option(
    '-t',
    '--theta',
    'thetas',
    help='An explicit admissible *angle*.',
    type=float,
    multiple=True,
)
@option(
    '-g',
    '--grid',
    help='The size of the admissible *angle* grid.',
    type=IntRange(min=1),
)
@option(
    '--compare/--no-compare',
    default=None,
    help='Whether to add raw and REM-only estimates.',
)
async def jones(
    grid: Optional[int] = None,
    **kwargs: object,
) -> Dict[str, Any]:
    if grid is not None and not kwargs.get('thetas'):
        kwargs['thetas'] = grid
    return _params(Experiment.JONES, **kwargs)


@cli.command(name='vqe')
@option('--eps-d', help='The impurity level *ε_d*.', type=float)
@option('--eps1', help='The bath level *ε_1*.', type=float)
@option('--mu', help='The chemical potential *μ*.', type=float)
@option('--u', help='The on-site repulsion *U*.', type=float)
@option('--v', help='The hybridization *V*.', type=float)
@option(
    '--max-iters',
    help='The maximum number of optimizer *iterations*.',
    type=IntRange(min=0),
)
@option(
    '--exact/--sampled',
    default=None,
    help='Whether energies are exact expectations or shot estimates.',
)
@option(
    '--convention',
    help='The qubit Hamiltonian to minimize.',
    type=Choice(['printed', 'fermionic'], case_sensitive=False),
)
async def vqe(**kwargs: object) -> Dict[str, Any]:
    return _params(Experiment.VQE, **kwargs)


@cli.command(name='qutrit-fit')
@option(
    '--trace',
    help='A CSV *trace* with `delay, p0, p1, p2` columns.',
    type=PathType(exists=True, dir_okay=False),
)
@option(
    '-d',
    '--delay',
    'delays',
    help='A *delay* in µs of the synthetic trace.',
    type=float,
    multiple=True,
)
@option(
    '--trace-noise',
    'noise',
    help='The Gaussian *noise* added to a synthetic trace.',
    type=FloatRange(min=0),
)
async def qutrit_fit(**kwargs: object) -> Dict[str, Any]:
    return _params(Experiment.QUTRIT_FIT, **kwargs)


@cli.command(name='transpile')
@option(
    '-i',
    '--input',
    help='The JSON or QASM *circuit* to transpile.',
    type=PathType(exists=True, dir_okay=False),
    required=True,
)
@option(
    '--native',
    'output',
    help='Where to write the native *circuit*, same format by suffix.',
)
async def transpile(**kwargs: object) -> Dict[str, Any]:
    return _params(Experiment.TRANSPILE, **kwargs)


def build_configs(
    commands: Iterable[Dict[str, Any]],
    /,
    base: Optional[ExperimentConfig] = None,
    **overrides: Any,
) -> List[ExperimentConfig]:
    """Merge every subcommand onto ``base``; options given win."""
    configs = []
    for command in commands:
        experiment = command['experiment']
        if base is not None and base.experiment == experiment:
            config = base
        else:
            config = ExperimentConfig(experiment)
        configs.append(config.merge(**overrides, **command['params']))
    if not configs and base is not None:
        configs.append(base.merge(**overrides))
    return configs


@cli.result_callback()
async def main(
    commands: Iterable[Dict[str, Any]],
    /,
    logging: str,
    noise: Optional[str] = None,
    config: Optional[str] = None,
    shots: Optional[int] = None,
    seed: Optional[int] = None,
    mitigation: Optional[str] = None,
    output: Optional[str] = None,
    plot: bool = True,
) -> None:
    basicConfig(level=logging.upper(), force=True)
    configs = build_configs(
        commands,
        await load_config(config) if config else None,
        backend=noise,
        shots=shots,
        seed=seed,
        mitigation=mitigation and Mitigation.parse(mitigation),
    )
    if not configs:
        raise UsageError('Name an experiment or pass a `--config`.')
    reports = await Workbench(configs, output, plot).run()
    logger.info(
        'Summary:\n%s', summary_frame(reports).to_string(index=False)
    )


async def run_cli(args: Sequence[str], /) -> int:
    """Run the command line; 2 on usage or config errors, 1 on failures."""
    try:
        await cli.main(
            args=list(args),
            prog_name='workbench',
            standalone_mode=False,
            auto_envvar_prefix='WORKBENCH',
        )
    except UsageError as error:
        error.show()
        return USAGE_EXIT
    except ConfigError:
        logger.exception('Invalid configuration!')
        return USAGE_EXIT
    except Abort:
        return FAILURE_EXIT
    except Exception:
        logger.exception('Experiment failed!')
        return FAILURE_EXIT
    return 0


if __name__ == '__main__':
    exit(
        run(
            run_cli,
            argv[1:],
            backend_options=dict(use_uvloop=os_name != 'nt'),
        )
    )
