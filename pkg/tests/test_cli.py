import pytest
from orjson import dumps, loads

from bin.main import build_configs, run_cli
from lib.models.mitigation import Mitigation
from lib.models.report import Experiment, ExperimentConfig

pytestmark = pytest.mark.anyio


class TestBuildConfigs:
    def test_options_override_the_base(self):
        base = ExperimentConfig(
            Experiment.CHSH, shots=100, seed=4, params=dict(points=8)
        )
        (config,) = build_configs(
            [dict(experiment=Experiment.CHSH, params=dict(points=3))],
            base,
            backend='good',
            shots=None,
            seed=None,
            mitigation=Mitigation(rem=True),
        )
        assert config.backend == 'good'
        assert config.shots == 100
        assert config.seed == 4
        assert config.params == dict(points=3)
        assert config.mitigation.rem

    def test_base_alone(self):
        base = ExperimentConfig(Experiment.MERMIN)
        (config,) = build_configs([], base, shots=50)
        assert config.experiment == Experiment.MERMIN
        assert config.shots == 50

    def test_chained_commands(self):
        configs = build_configs(
            [
                dict(experiment=Experiment.CHSH, params={}),
                dict(experiment=Experiment.MERMIN, params={}),
            ],
            seed=7,
        )
        assert [_.experiment for _ in configs] == ['chsh', 'mermin']
        assert all(_.seed == 7 for _ in configs)


async def test_chsh_run(tmp_path):
    code = await run_cli(
        ['-o', str(tmp_path), '-s', '200', '--seed', '1', 'chsh', '-p', '2']
    )
    assert code == 0
    data = loads((tmp_path / 'chsh.json').read_bytes())
    assert data['config']['shots'] == 200
    assert data['seed'] == 1
    assert len(data['points']) == 2
    assert (tmp_path / 'chsh.csv').is_file()


async def test_chained_run(tmp_path):
    code = await run_cli(
        [
            '--out',
            str(tmp_path),
            '--no-plot',
            '-s',
            '100',
            'chsh',
            '-t',
            '0.5',
            'mermin',
        ]
    )
    assert code == 0
    assert (tmp_path / 'chsh.json').is_file()
    assert (tmp_path / 'mermin.json').is_file()
    assert not (tmp_path / 'chsh.csv').exists()


async def test_config_file(tmp_path):
    config = tmp_path / 'config.json'
    config.write_bytes(
        dumps(dict(experiment='neutrino', shots=100, params=dict(points=2)))
    )
    report = tmp_path / 'out.json'
    assert await run_cli(['-c', str(config), '-o', str(report)]) == 0
    data = loads(report.read_bytes())
    assert data['experiment'] == 'neutrino'
    assert len(data['points']) == 2


@pytest.mark.parametrize(
    'args',
    [
        ['--bogus'],
        [],
        ['chsh', '-p', '0'],
        ['-m', 'magic', 'mermin'],
        ['maxcut'],
    ],
)
async def test_usage_errors(args):
    assert await run_cli(args) == 2


async def test_invalid_config_file(tmp_path):
    config = tmp_path / 'config.json'
    config.write_bytes(dumps(dict(experiment='chsh', repeat=True)))
    assert await run_cli(['-c', str(config)]) == 2


async def test_failures_exit_with_one(tmp_path):
    profile = tmp_path / 'profile.json'
    profile.write_text('[]')
    assert await run_cli(['-n', str(profile), '-s', '10', 'mermin']) == 1
