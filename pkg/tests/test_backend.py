import numpy as np
import pytest

from lib.backend import Backend
from lib.errors import SimulationError
from lib.models import Circuit, Gate
from lib.models.noise import NoiseProfile
from lib.models.topology import Topology
from lib.sim import run_statevector, state_fidelity


class TestBackend:
    def test_profile_by_name(self):
        backend = Backend('good')
        assert backend.name == 'good calibration'
        assert backend.topology == Topology.star()

    def test_bell_counts(self, noiseless, bell_circuit):
        counts = noiseless.run(bell_circuit, 2000, 1)
        assert counts.shots == 2000
        assert set(counts.table) <= {'00', '11'}

    def test_runs_are_seeded(self, readout_flips, bell_circuit):
        assert readout_flips.run(bell_circuit, 500, 9) == readout_flips.run(
            bell_circuit, 500, 9
        )

    def test_bit_order_is_logical(self, noiseless):
        probabilities = noiseless.probabilities(Circuit(2, [Gate.x(1)]))
        np.testing.assert_allclose(probabilities, [0, 1, 0, 0], atol=1e-12)

    def test_measured_subset(self, noiseless):
        circuit = Circuit(3, [Gate.x(2), Gate.cnot(2, 0), Gate.measure(2)])
        np.testing.assert_allclose(
            noiseless.probabilities(circuit), [0, 1], atol=1e-12
        )

    def test_readout_confusion(self, readout_flips):
        probabilities = readout_flips.probabilities(Circuit(2, [Gate.h(0)]))
        np.testing.assert_allclose(
            probabilities, [0.485, 0.015, 0.485, 0.015], atol=1e-12
        )

    def test_logical_state_undoes_frames(self, noiseless, bell_circuit):
        circuit = bell_circuit.extend([Gate.rz(0.7, 1), Gate.h(1)])
        state = noiseless.logical_state(circuit)
        assert state.num_qubits == 2
        assert state_fidelity(
            state, run_statevector(circuit)
        ) == pytest.approx(1)

    def test_logical_state_ignores_measurements(self, noiseless):
        circuit = Circuit(2, [Gate.x(0), Gate.measure(0, 1)])
        state = noiseless.logical_state(circuit)
        np.testing.assert_allclose(
            state.probabilities(), [0, 0, 1, 0], atol=1e-12
        )

    def test_noise_lowers_fidelity(self, bell_circuit):
        backend = Backend(NoiseProfile(p2=0.05))
        fidelity = state_fidelity(
            backend.logical_state(bell_circuit),
            run_statevector(bell_circuit),
        )
        assert 0.9 < fidelity < 1 - 1e-3

    def test_native_circuits_run_as_given(self, noiseless, bell_circuit):
        native = noiseless.compile(bell_circuit, (2, 4))
        assert noiseless.compile(native) is native
        np.testing.assert_allclose(
            noiseless.probabilities(native), [0.5, 0, 0, 0.5], atol=1e-12
        )

    def test_zero_shots(self, noiseless, bell_circuit):
        with pytest.raises(SimulationError):
            noiseless.run(bell_circuit, 0, 0)

    def test_cache_computes_once(self, noiseless):
        calls = []

        def factory():
            calls.append(1)
            return object()

        first = noiseless.cached('key', factory)
        assert noiseless.cached('key', factory) is first
        assert len(calls) == 1
