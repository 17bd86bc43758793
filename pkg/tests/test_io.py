import pytest
from orjson import dumps, loads

from lib.errors import ConfigError
from lib.io import (
    emit_plot_data,
    load_config,
    read_circuit,
    read_json,
    read_report,
    read_rows,
    write_circuit,
    write_report,
)
from lib.io.reports import dump_json
from lib.models import Gate
from lib.models.report import Experiment, ExperimentConfig, ExperimentReport
from lib.models.topology import NativeCircuit
from lib.sim import circuit_unitary
from lib.sim.linalg import phase_distance
from lib.transpiler import transpile

pytestmark = pytest.mark.anyio


@pytest.fixture
def chsh_report():
    return ExperimentReport(
        ExperimentConfig(Experiment.CHSH, shots=100, seed=2),
        [
            dict(
                theta=0.5,
                label='first',
                estimate=2.5,
                stderr=0.1,
                theory=2.6,
                methods=['rc', 'rem'],
            ),
            dict(theta=1.0, estimate=1.9, stderr=None, theory=1.8),
        ],
        dict(points=2),
    ).finish()


async def test_report_round_trip(tmp_path, chsh_report):
    path = await write_report(chsh_report, tmp_path / 'nested' / 'r.json')
    assert path.is_file()
    again = await read_report(path)
    assert again.config == chsh_report.config
    assert again.points == chsh_report.points
    assert again.finished_at == chsh_report.finished_at


async def test_malformed_report(tmp_path):
    path = tmp_path / 'r.json'
    path.write_bytes(dumps(dict(points=[])))
    with pytest.raises(ConfigError):
        await read_report(path)


async def test_unreadable_json(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{')
    with pytest.raises(ConfigError):
        await read_json(path)
    with pytest.raises(ConfigError):
        await read_json(tmp_path / 'missing.json')


async def test_load_config(tmp_path):
    path = tmp_path / 'config.json'
    path.write_bytes(
        dumps(dict(experiment='chsh', shots=100, params=dict(points=4)))
    )
    config = await load_config(path)
    assert config.experiment == Experiment.CHSH
    assert config.shots == 100
    assert config.params == dict(points=4)
    path.write_bytes(dumps(dict(experiment='chsh', repeat=2)))
    with pytest.raises(ConfigError):
        await load_config(path)


def test_json_extensions():
    data = loads(dump_json(dict(z=1 + 2j, s={2, 1}, k={3: 'x'})))
    assert data == dict(z=[1.0, 2.0], s=[1, 2], k={'3': 'x'})


@pytest.mark.parametrize('suffix', ['.json', '.qasm'])
async def test_circuit_files(tmp_path, bell_circuit, suffix):
    circuit = bell_circuit.extend([Gate.ry(0.4, 1)])
    path = await write_circuit(circuit, tmp_path / ('bell%s' % suffix))
    again = await read_circuit(path)
    assert again.num_qubits == 2
    assert phase_distance(
        circuit_unitary(again), circuit_unitary(circuit)
    ) < 1e-9


async def test_native_circuit_file(tmp_path, bell_circuit):
    native = transpile(bell_circuit)
    path = await write_circuit(native, tmp_path / 'native.json')
    again = await read_circuit(path)
    assert isinstance(again, NativeCircuit)
    assert again.layout == native.layout


async def test_missing_circuit(tmp_path):
    with pytest.raises(ConfigError):
        await read_circuit(tmp_path / 'nothing.qasm')


async def test_plot_data(tmp_path, chsh_report):
    path = await emit_plot_data(chsh_report, tmp_path / 'plots' / 'c.csv')
    rows = await read_rows(path)
    assert list(rows[0]) == [
        'theta',
        'estimate',
        'stderr',
        'theory',
        'label',
        'methods',
    ]
    assert rows[0]['methods'] == 'rc+rem'
    assert rows[1]['stderr'] == ''
    assert rows[1]['label'] == ''
    assert float(rows[1]['theta']) == 1.0


async def test_missing_rows(tmp_path):
    with pytest.raises(ConfigError):
        await read_rows(tmp_path / 'missing.csv')
