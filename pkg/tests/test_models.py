from math import inf, nan

import numpy as np
import pytest

from lib.errors import (
    CircuitError,
    ConfigError,
    MitigationError,
    NoiseError,
    RoutingError,
    SimulationError,
)
from lib.models import (
    AimParams,
    AnsatzState,
    BraidWord,
    Circuit,
    Counts,
    Experiment,
    ExperimentConfig,
    ExperimentReport,
    Gate,
    GateKind,
    Graph,
    IsingProblem,
    MassSplittings,
    MeasurementSetting,
    MitigatedValue,
    Mitigation,
    MitigationTag,
    NativeCircuit,
    NoiseProfile,
    Observable,
    OscillationPoint,
    PauliString,
    PmnsMatrix,
    QuantumState,
    QutritRates,
    QutritTrace,
    Topology,
    VqeIteration,
    VqeTrace,
)


class TestGate:
    def test_rotation_keeps_its_angles(self):
        gate = Gate.r(0.1, 0.2, 0)
        assert gate.kind == GateKind.R
        assert gate.params == (0.1, 0.2)
        assert gate.qubits == (0,)

    def test_repeated_qubit_is_rejected(self):
        with pytest.raises(CircuitError):
            Gate(GateKind.CZ, (1, 1))

    def test_arity_is_checked(self):
        with pytest.raises(CircuitError):
            Gate(GateKind.H, (0, 1))
        with pytest.raises(CircuitError):
            Gate(GateKind.RZ, (0,), ())

    def test_non_finite_angle_is_rejected(self):
        with pytest.raises(CircuitError):
            Gate.rz(nan, 0)

    def test_non_unitary_matrix_is_rejected(self):
        with pytest.raises(CircuitError):
            Gate.unitary(np.array([[1, 1], [0, 1]]), 0)

    def test_matrix_payload_is_read_only(self):
        gate = Gate.unitary(np.eye(4), 0, 1)
        assert gate.kind == GateKind.U4
        with pytest.raises(ValueError):
            gate.matrix[0, 0] = 2

    def test_inverse_of_rotation_negates_theta(self):
        assert Gate.r(0.4, 0.2, 0).inverse().params == (-0.4, 0.2)
        assert Gate(GateKind.S, (0,)).inverse().kind == GateKind.SDG


class TestCircuit:
    def test_gate_beyond_width_is_rejected(self):
        with pytest.raises(CircuitError):
            Circuit(2, [Gate.h(3)])

    def test_gate_after_measurement_is_rejected(self):
        circuit = Circuit(1, [Gate.measure(0), Gate.h(0)])
        with pytest.raises(CircuitError):
            circuit.without_measurements()

    def test_measured_qubits_are_sorted(self):
        circuit = Circuit(3, [Gate.h(0), Gate.measure(2, 0)])
        assert circuit.measured_qubits == (0, 2)
        assert len(circuit.operations()) == 1

    def test_count_by_kind(self, bell_circuit):
        assert bell_circuit.count(GateKind.CNOT) == 1
        assert bell_circuit.count(GateKind.CZ, GateKind.H) == 1


class TestQuantumState:
    def test_unnormalized_vector_is_rejected(self):
        with pytest.raises(SimulationError):
            QuantumState([1, 1])

    def test_non_positive_density_is_rejected(self):
        with pytest.raises(SimulationError):
            QuantumState([[1.2, 0], [0, -0.2]])

    def test_dimension_must_be_power_of_two(self):
        with pytest.raises(SimulationError):
            QuantumState([1, 0, 0])

    def test_zero_state(self):
        state = QuantumState.zero(2, density=True)
        assert state.is_density
        assert state.num_qubits == 2
        np.testing.assert_allclose(state.probabilities(), [1, 0, 0, 0])

    def test_plus_state_probabilities(self):
        state = QuantumState(np.array([1, 1]) / np.sqrt(2))
        np.testing.assert_allclose(state.probabilities(), [0.5, 0.5])
        np.testing.assert_allclose(
            state.density_matrix(), [[0.5, 0.5], [0.5, 0.5]]
        )


class TestCounts:
    def test_frequencies_follow_basis_order(self):
        counts = Counts({'00': 3, '11': 1})
        assert counts.shots == 4
        np.testing.assert_allclose(counts.frequencies(), [0.75, 0, 0, 0.25])

    def test_mixed_lengths_are_rejected(self):
        with pytest.raises(SimulationError):
            Counts({'0': 1, '11': 1})

    def test_shot_total_must_match(self):
        with pytest.raises(SimulationError):
            Counts({'01': 2}, 3)

    def test_marginal(self):
        counts = Counts({'00': 3, '11': 1}).marginal([1])
        assert counts.table == {'0': 3, '1': 1}


class TestPauliAlgebra:
    def test_support_and_merge(self):
        assert PauliString('xiz').support == (0, 2)
        merged = PauliString('XII').merge(PauliString('IIZ'))
        assert merged == PauliString('XIZ')

    def test_incompatible_merge_raises(self):
        with pytest.raises(CircuitError):
            PauliString('XZ').merge(PauliString('ZZ'))

    def test_duplicates_merge_and_zeros_stay(self):
        obs = Observable([(1, 'XZ'), (0.5, 'XZ'), (0, 'II')])
        assert obs.to_pairs() == ((1.5, 'XZ'), (0.0, 'II'))
        assert obs.simplify().to_pairs() == ((1.5, 'XZ'),)
        assert obs.coefficient('ZZ') == 0

    def test_vanishing_observable_keeps_identity(self):
        obs = Observable([(0, 'XX')]).simplify()
        assert obs.to_pairs() == ((0.0, 'II'),)

    def test_invalid_observables(self):
        with pytest.raises(CircuitError):
            Observable([(1j, 'X')])
        with pytest.raises(CircuitError):
            Observable([(1, 'X'), (1, 'XX')])
        with pytest.raises(CircuitError):
            Observable([])

    def test_matrix_of_sum(self):
        obs = Observable([(0.5, 'Z'), (2, 'I')])
        np.testing.assert_allclose(obs.matrix(), np.diag([2.5, 1.5]))

    def test_setting_rejects_foreign_terms(self):
        with pytest.raises(CircuitError):
            MeasurementSetting(PauliString('ZZ'), [(1.0, PauliString('XI'))])


class TestTopology:
    def test_star(self):
        star = Topology.star()
        assert len(star.edges) == 4
        assert star.neighbors(2) == (0, 1, 3, 4)
        assert star.shortest_path(0, 4) == [0, 2, 4]

    def test_disconnected_path_raises(self):
        with pytest.raises(RoutingError):
            Topology(3, [(0, 1)]).shortest_path(0, 2)

    def test_native_circuit_checks_gates_and_edges(self):
        with pytest.raises(CircuitError):
            NativeCircuit(Circuit(5, [Gate.h(0)]), Topology.star())
        with pytest.raises(CircuitError):
            NativeCircuit(Circuit(5, [Gate.cz(0, 1)]), Topology.star())
        native = NativeCircuit(Circuit(5, [Gate.cz(0, 2)]), Topology.star())
        assert native.final_frames == (0.0,) * 5


class TestGraph:
    def test_self_loop_is_rejected(self):
        with pytest.raises(ConfigError):
            Graph(3, [(1, 1)])

    def test_ising_energy(self):
        problem = IsingProblem.from_graph(Graph(2, [(0, 1)]))
        assert problem.energy([1, -1]) == -1
        assert problem.energy([1, 1]) == 1
        assert problem.coupled_pairs() == ((0, 1, 1.0),)

    def test_cycle(self):
        assert Graph.cycle(4).num_edges == 4


class TestNoiseProfile:
    def test_probabilities_are_bounded(self):
        with pytest.raises(NoiseError):
            NoiseProfile(p1=1.0)

    def test_readout_must_be_stochastic(self):
        with pytest.raises(NoiseError):
            NoiseProfile(readout=[[[0.9, 0.2], [0.0, 1.0]]])

    def test_unknown_keys_are_rejected(self):
        with pytest.raises(NoiseError):
            NoiseProfile.from_dict(dict(p3=0.1))

    def test_dict_round_trip(self):
        profile = NoiseProfile(
            'custom', 0.001, 0.01, edge_p2={(4, 2): 0.1}, cz_phase=0.05
        )
        again = NoiseProfile.from_dict(profile.to_dict())
        assert again == profile
        assert again.p2_for(2, 4) == 0.1
        assert again.p2_for(0, 2) == 0.01

    def test_classification(self):
        assert NoiseProfile().is_noiseless
        flips = NoiseProfile.symmetric_readout(0.03, 2)
        assert flips.has_readout_error and not flips.is_stochastic
        assert NoiseProfile(overrotation=0.02).is_coherent


class TestQutritRecords:
    def test_rates_must_be_positive(self):
        with pytest.raises(NoiseError):
            QutritRates(0, 1, 1)

    def test_lifetimes(self):
        rates = QutritRates.from_lifetimes(44.4, 35.0, 69.2)
        np.testing.assert_allclose(rates.lifetimes, (44.4, 35.0, 69.2))

    def test_trace_rows_sum_to_one(self):
        with pytest.raises(NoiseError):
            QutritTrace([0, 1], [[1, 0, 0], [0.5, 0.2, 0.2]])


class TestMitigation:
    def test_parse_flags(self):
        mitigation = Mitigation.parse('rem+rc+zne')
        assert mitigation.rem
        assert mitigation.rc == 30
        assert mitigation.zne == (1, 3, 5)
        assert mitigation.tags == set(MitigationTag)
        assert not Mitigation.parse('none').tags

    def test_unknown_flag(self):
        with pytest.raises(ConfigError):
            Mitigation.parse('rem,dd')

    @pytest.mark.parametrize('scales', [(1, 2), (3,), (1, 1, 3)])
    def test_invalid_scales(self, scales):
        with pytest.raises(ConfigError):
            Mitigation(zne=scales)

    def test_without(self):
        mitigation = Mitigation.parse('rem+zne').without(MitigationTag.ZNE)
        assert mitigation.tags == {MitigationTag.REM}

    def test_values_add_in_quadrature(self):
        total = MitigatedValue(1, 0.3, [MitigationTag.REM]) + MitigatedValue(
            2, 0.4
        )
        assert total.value == 3
        assert total.stderr == pytest.approx(0.5)
        assert total.method_tags == {MitigationTag.REM}
        assert total.scale(-2).stderr == pytest.approx(1.0)

    def test_negative_stderr(self):
        with pytest.raises(MitigationError):
            MitigatedValue(1, -1)


class TestExperimentConfig:
    def test_unknown_parameters(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(Experiment.CHSH, params=dict(sizes='3..6'))
        with pytest.raises(ConfigError):
            ExperimentConfig('teleport')
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict(dict(experiment='chsh', repeat=2))

    def test_shots_must_be_positive(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(Experiment.CHSH, shots=0)

    def test_round_trip(self):
        config = ExperimentConfig(
            Experiment.JONES,
            'good',
            2000,
            7,
            Mitigation.parse('rem+rc'),
            dict(knot='hopf', compare=True),
        )
        again = ExperimentConfig.from_dict(config.to_dict())
        assert again == config
        assert again.params == dict(knot='hopf', compare=True)

    def test_merge_overrides_win(self):
        config = ExperimentConfig(Experiment.CHSH, shots=100, params={})
        merged = config.merge(shots=500, seed=None, points=8)
        assert merged.shots == 500
        assert merged.seed == 0
        assert merged.params == dict(points=8)


class TestExperimentReport:
    def test_round_trip_keeps_points_and_times(self):
        config = ExperimentConfig(Experiment.CHSH, shots=10, seed=3)
        report = ExperimentReport(
            config,
            [dict(theta=0.0, estimate=2.1, stderr=0.1, theory=2.0)],
            dict(violations=1),
        ).finish()
        assert report.elapsed >= 0
        again = ExperimentReport.from_dict(report.to_dict())
        assert again.config == config
        assert again.points == report.points
        assert again.summary == report.summary
        assert again.started_at == report.started_at
        assert again.finished_at == report.finished_at
        assert again.seed == 3

    def test_unfinished_report_has_no_elapsed(self):
        report = ExperimentReport(ExperimentConfig(Experiment.MERMIN))
        assert report.elapsed is None
        assert report.to_dict()['finished_at'] is None


class TestNeutrinoRecords:
    def test_mixing_matrix_is_repaired(self):
        pmns = PmnsMatrix()
        assert pmns.deviation < 5e-3
        np.testing.assert_allclose(
            pmns.u_exact @ pmns.u_exact.conj().T, np.eye(4), atol=1e-12
        )

    def test_far_from_unitary_is_rejected(self):
        with pytest.raises(ConfigError):
            PmnsMatrix(2 * np.eye(4))

    def test_splittings_are_ordered(self):
        with pytest.raises(ConfigError):
            MassSplittings(1e-3, 1e-4)

    def test_point_keeps_leakage(self):
        point = OscillationPoint(
            100.0, [0.2, 0.5, 0.3, 0.001], [0.01] * 4, [0.2, 0.5, 0.3, 0]
        )
        row = point.to_dict()
        assert row['p_mu'] == 0.5
        assert row['theory_tau'] == 0.3
        assert row['p_x'] == 0.001
        with pytest.raises(ConfigError):
            OscillationPoint(0.0, [1.2, 0, 0], [0] * 3, [1, 0, 0])


class TestBraidWord:
    def test_named_knots(self):
        assert BraidWord.parse('trefoil') == BraidWord.parse('1,1,1')
        assert BraidWord.parse(' Hopf ').writhe == 2

    def test_prefix_and_signs(self):
        word = BraidWord.parse('word=1,-2')
        assert word.writhe == 0
        assert len(word) == 2
        assert str(word) == '1,-2'
        assert str(word + BraidWord.parse('2')) == '1,-2,2'

    @pytest.mark.parametrize('text', ['3', '', '1,x', '0'])
    def test_invalid_words(self, text):
        with pytest.raises(ConfigError):
            BraidWord.parse(text)


class TestVqeRecords:
    def test_parameters_must_be_finite(self):
        with pytest.raises(ConfigError):
            AimParams(u=inf)

    def test_ansatz_takes_seven_angles(self):
        with pytest.raises(ConfigError):
            AnsatzState([0.0] * 6)
        assert AnsatzState([0.0] * 7).layout.startswith('ry')

    def test_trace(self):
        iterations = [
            VqeIteration((0.0,) * 7, -3.0, 0.0, 1.0),
            VqeIteration((0.1,) * 7, -3.9, 0.0, 1e-4),
        ]
        trace = VqeTrace(iterations, -4.0, True)
        assert trace.best.energy == -3.9
        assert trace.relative_error() == pytest.approx(0.025)
        rows = trace.to_rows()
        assert rows[1]['iteration'] == 1
        assert rows[1]['theta_7'] == 0.1
        with pytest.raises(ConfigError):
            VqeTrace([], -4.0)
