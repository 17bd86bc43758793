import pytest
from orjson import loads

from lib import Workbench
from lib.errors import ConfigError
from lib.io import write_circuit
from lib.models.report import Experiment, ExperimentConfig
from lib.noise.qutrit import REFERENCE_LIFETIMES

pytestmark = pytest.mark.anyio


def config(experiment, shots=None, **params):
    return ExperimentConfig(experiment, shots=shots, seed=1, params=params)


class TestReportPaths:
    def test_without_output(self):
        assert Workbench(config('mermin')).report_path(0) is None

    def test_single_json_path(self, tmp_path):
        bench = Workbench(config('mermin'), tmp_path / 'run.json')
        assert bench.report_path(0) == tmp_path / 'run.json'

    def test_directory(self, tmp_path):
        bench = Workbench([config('chsh'), config('mermin')], tmp_path)
        assert bench.report_path(1) == tmp_path / 'mermin.json'

    def test_repeated_experiments(self, tmp_path):
        bench = Workbench([config('chsh'), config('chsh')], tmp_path)
        assert bench.report_path(0) == tmp_path / 'chsh-0.json'
        assert bench.report_path(1) == tmp_path / 'chsh-1.json'


async def test_nothing_to_run():
    with pytest.raises(ConfigError):
        await Workbench([]).run()


async def test_chsh_writes_report_and_plot(tmp_path):
    bench = Workbench(config('chsh', 400, points=2), tmp_path)
    (report,) = await bench.run()
    assert report.summary['points'] == 2
    assert report.metadata['backend'] == 'noiseless'
    assert report.metadata['shots'] == 400
    data = loads((tmp_path / 'chsh.json').read_bytes())
    assert data['experiment'] == 'chsh'
    assert len(data['points']) == 2
    assert (tmp_path / 'chsh.csv').is_file()


async def test_no_plot(tmp_path):
    await Workbench(config('mermin', 100), tmp_path, False).run()
    assert (tmp_path / 'mermin.json').is_file()
    assert not (tmp_path / 'mermin.csv').exists()


async def test_mermin():
    (report,) = await Workbench(config('mermin', 200)).run()
    assert len(report.points) == 16
    assert report.summary['classical_bound'] == 4


async def test_ghz_comparison_only():
    (report,) = await Workbench(
        config('ghz', 500, tomography=False, compare=['good'])
    ).run()
    assert report.points == []
    (row,) = report.metadata['calibrations']
    assert row['profile'] == 'good calibration'


async def test_maxcut_from_edges():
    (report,) = await Workbench(config('maxcut', 512, edges='1-2,2-3')).run()
    assert report.summary['optimum'] == 2
    assert len(report.points) == 4


async def test_maxcut_from_file(tmp_path):
    path = tmp_path / 'edges.txt'
    path.write_text('1 2\n2 3\n3 1\n')
    (report,) = await Workbench(
        config('maxcut', 512, edge_file=str(path))
    ).run()
    assert report.summary['optimum'] == 2


@pytest.mark.parametrize(
    'params',
    [dict(), dict(edges='1-2', nodes=7), dict(edge_file='/no/such/file')],
)
async def test_invalid_maxcut(params):
    with pytest.raises(ConfigError):
        await Workbench(config('maxcut', 64, **params)).run()


async def test_qscore():
    (report,) = await Workbench(
        config('qscore', 64, sizes='3', instances=1, policy='optimal')
    ).run()
    assert report.summary['policy'] == 'optimal'
    assert report.points[0]['size'] == 3


async def test_neutrino():
    (report,) = await Workbench(
        config('neutrino', 200, points=2, lmax=500.0)
    ).run()
    assert report.summary['points'] == 2
    assert report.summary['first_minimum'] > 0
    assert 'flavors' in report.metadata


async def test_jones():
    (report,) = await Workbench(
        config('jones', 500, knot='hopf', thetas=[0.1, 1.5])
    ).run()
    assert report.summary['braid'] == '1,1'
    assert [_['theta'] for _ in report.points] == [0.1, 1.5]


async def test_jones_comparison():
    (report,) = await Workbench(
        config('jones', 200, knot='1', thetas=2, compare=True)
    ).run()
    assert {
        'mean_abs_error_raw',
        'mean_abs_error_rem',
        'mean_abs_error_configured',
    } <= set(report.summary)
    assert 're_raw' in report.points[0]


async def test_exact_vqe():
    (report,) = await Workbench(config('vqe', exact=True, max_iters=3)).run()
    assert report.summary['convention'] == 'printed'
    summary = report.summary
    assert summary['best_energy'] >= summary['exact_energy'] - 1e-9
    assert report.metadata['exact_expectation']


async def test_sampled_vqe():
    (report,) = await Workbench(config('vqe', 2000, max_iters=1)).run()
    assert report.summary['final_stderr'] > 0
    assert 1 <= len(report.points) <= 2


async def test_qutrit_fit():
    (report,) = await Workbench(ExperimentConfig('qutrit-fit')).run()
    assert report.summary['t10'] == pytest.approx(
        REFERENCE_LIFETIMES[0], rel=1e-3
    )
    assert report.metadata['source'] == 'synthetic'
    assert len(report.points) == 30


async def test_qutrit_fit_from_file(tmp_path):
    (synthetic,) = await Workbench(ExperimentConfig('qutrit-fit')).run()
    bench = Workbench(ExperimentConfig('qutrit-fit'), tmp_path)
    await bench.run()
    (report,) = await Workbench(
        config('qutrit-fit', trace=str(tmp_path / 'qutrit-fit.csv'))
    ).run()
    assert report.metadata['source'].endswith('qutrit-fit.csv')
    assert report.summary['t21'] == pytest.approx(
        synthetic.summary['t21'], rel=1e-6
    )


async def test_transpile(tmp_path, bell_circuit):
    source = await write_circuit(bell_circuit, tmp_path / 'bell.qasm')
    (report,) = await Workbench(config('transpile', input=str(source))).run()
    target = tmp_path / 'bell.native.qasm'
    assert report.summary['output'] == str(target)
    assert target.is_file()
    stages = {_['stage']: _ for _ in report.points}
    assert stages['input']['two_qubit'] == 1
    assert stages['native']['cz'] == 1


async def test_transpile_needs_input():
    with pytest.raises(ConfigError):
        await Workbench(config(Experiment.TRANSPILE)).run()
