from math import pi

import numpy as np
import pytest
from scipy.stats import unitary_group

from lib.errors import CircuitError, TranspileError
from lib.models import Circuit, Gate
from lib.models.circuit import GateKind
from lib.models.topology import NativeCircuit, Topology
from lib.sim import circuit_unitary, run_statevector
from lib.sim.gates import CZ, H, r_matrix, rz_matrix
from lib.sim.linalg import phase_distance
from lib.transpiler import (
    absorb_virtual_z,
    decompose_1q,
    decompose_2q,
    decompose_2q_gates,
    initial_layout,
    lower,
    merge_1q,
    push_rz_through,
    route,
    transpile,
)
from lib.transpiler.decompose import wrap_angle
from lib.transpiler.formats import (
    from_json,
    from_qasm,
    parse_angle,
    to_json,
    to_qasm,
)

CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def random_source(seed, num_qubits=4, depth=14):
    rng = np.random.default_rng(seed)
    gates = []
    for _ in range(depth):
        a, b = (int(_) for _ in rng.choice(num_qubits, 2, replace=False))
        match rng.integers(9):
            case 0:
                gates.append(Gate.h(a))
            case 1:
                gates.append(Gate(GateKind.S, (a,)))
            case 2:
                gates.append(Gate.ry(rng.uniform(-pi, pi), a))
            case 3:
                gates.append(Gate.rz(rng.uniform(-pi, pi), a))
            case 4:
                gates.append(Gate.cnot(a, b))
            case 5:
                gates.append(Gate.cz(a, b))
            case 6:
                gates.append(Gate(GateKind.SWAP, (a, b)))
            case 7:
                matrix = unitary_group.rvs(2, random_state=rng)
                gates.append(Gate.unitary(matrix, a))
            case 8:
                matrix = unitary_group.rvs(4, random_state=rng)
                gates.append(Gate.unitary(matrix, a, b))
    return Circuit(num_qubits, gates)


def expected_state(source, native):
    """The source state placed on the physical wires of ``native``."""
    width = native.topology.num_qubits
    ancillas = np.zeros(2 ** (width - source.num_qubits), dtype=complex)
    ancillas[0] = 1
    tensor = np.kron(run_statevector(source).data, ancillas)
    free = sorted(set(range(width)) - set(native.layout))
    tensor = np.moveaxis(
        tensor.reshape((2,) * width),
        list(range(width)),
        list(native.layout) + free,
    )
    return tensor.reshape(-1)


def restored_state(native):
    frames = [
        Gate.rz(angle, qubit)
        for qubit, angle in enumerate(native.final_frames)
        if angle
    ]
    return run_statevector(native.circuit.extend(frames)).data


def assert_equivalent(source, native):
    overlap = np.vdot(expected_state(source, native), restored_state(native))
    assert abs(overlap) ** 2 == pytest.approx(1, abs=1e-8)


class TestTranspile:
    @pytest.mark.parametrize('seed', range(25))
    def test_random_circuits_are_preserved(self, seed):
        source = random_source(seed)
        assert_equivalent(source, transpile(source))

    @pytest.mark.slow
    @pytest.mark.parametrize('seed', range(25, 1000))
    def test_many_random_circuits_are_preserved(self, seed):
        source = random_source(seed, num_qubits=5, depth=20)
        assert_equivalent(source, transpile(source))

    @pytest.mark.parametrize('seed', range(10))
    def test_output_is_native_on_the_star(self, seed):
        native = transpile(random_source(seed))
        kinds = {_.kind for _ in native.circuit.gates}
        assert kinds <= {GateKind.R, GateKind.CZ, GateKind.BARRIER}
        star = Topology.star()
        for gate in native.circuit.gates:
            if gate.kind == GateKind.CZ:
                assert star.has_edge(*gate.qubits)

    def test_line_topology(self):
        source = random_source(3, num_qubits=3)
        native = transpile(source, Topology.line(3))
        assert native.topology.num_qubits == 3
        assert_equivalent(source, native)

    def test_explicit_layout_is_kept(self):
        source = Circuit(2, [Gate.h(0), Gate.cnot(0, 1)])
        native = transpile(source, None, layout=(2, 4))
        assert native.initial_layout == (2, 4)
        assert_equivalent(source, native)

    def test_measurements_are_terminal(self):
        source = Circuit(2, [Gate.h(0), Gate.cnot(0, 1), Gate.measure(0, 1)])
        native = transpile(source)
        assert native.circuit.gates[-1].kind == GateKind.MEASURE
        assert set(native.circuit.gates[-1].qubits) == set(native.layout)

    def test_too_wide_circuit(self):
        with pytest.raises(TranspileError):
            transpile(Circuit(6, [Gate.h(5)]))

    def test_cnot_costs_one_cz(self):
        native = transpile(Circuit(2, [Gate.cnot(0, 1)]))
        assert native.circuit.count(GateKind.CZ) == 1


class TestDecompose:
    @pytest.mark.parametrize('seed', range(20))
    def test_single_qubit(self, seed):
        u = unitary_group.rvs(2, random_state=seed)
        gates = decompose_1q(u)
        assert len(gates) <= 2
        assert phase_distance(u, circuit_unitary(Circuit(1, gates))) < 1e-9

    def test_identity_is_empty(self):
        assert decompose_1q(np.eye(2)) == []

    @pytest.mark.parametrize('seed', range(20))
    def test_two_qubit(self, seed):
        u = unitary_group.rvs(4, random_state=seed)
        gates = decompose_2q_gates(u)
        assert sum(_.kind == GateKind.CZ for _ in gates) <= 3
        assert phase_distance(u, circuit_unitary(Circuit(2, gates))) < 1e-8

    def test_controlled_unitaries_are_cheap(self):
        gates = decompose_2q_gates(CNOT)
        assert sum(_.kind == GateKind.CZ for _ in gates) == 1
        assert decompose_2q_gates(CZ) == [Gate.cz(0, 1)]

    def test_local_unitaries_need_no_cz(self):
        u = np.kron(
            unitary_group.rvs(2, random_state=1),
            unitary_group.rvs(2, random_state=2),
        )
        gates = decompose_2q_gates(u)
        assert all(_.kind != GateKind.CZ for _ in gates)
        assert phase_distance(u, circuit_unitary(Circuit(2, gates))) < 1e-8

    def test_fragment_is_native(self):
        native = decompose_2q(CNOT)
        assert isinstance(native, NativeCircuit)
        assert native.topology.num_qubits == 2

    def test_non_unitary_is_refused(self):
        with pytest.raises(CircuitError):
            decompose_1q(np.ones((2, 2)))
        with pytest.raises(CircuitError):
            decompose_2q_gates(np.eye(2))

    def test_rz_commutes_into_phase(self, random_angles):
        theta, phi, angle = random_angles[:3]
        shifted = push_rz_through(angle, Gate.r(theta, phi, 0))
        np.testing.assert_allclose(
            rz_matrix(angle) @ r_matrix(theta, phi),
            r_matrix(*shifted.params) @ rz_matrix(angle),
            atol=1e-12,
        )

    def test_only_r_takes_a_frame(self):
        with pytest.raises(TranspileError):
            push_rz_through(0.1, Gate.cz(0, 1))

    def test_wrap_angle(self):
        assert wrap_angle(-pi / 2) == pytest.approx(3 * pi / 2)
        assert wrap_angle(2 * pi) == 0


class TestMerge:
    @pytest.mark.parametrize('seed', range(10))
    def test_merge_never_grows(self, seed):
        lowered = lower(random_source(seed))
        merged = merge_1q(lowered)
        assert len(merged) <= len(lowered)
        assert phase_distance(
            circuit_unitary(lowered), circuit_unitary(merged)
        ) < 1e-8

    def test_merge_is_idempotent(self):
        merged = merge_1q(lower(random_source(4)))
        assert merge_1q(merged).gates == merged.gates

    def test_hadamard_pair_cancels(self):
        lowered = lower(Circuit(1, [Gate.h(0), Gate.h(0)]))
        assert len(merge_1q(lowered)) == 0

    @pytest.mark.parametrize('seed', range(10))
    def test_virtual_z_frames_restore_unitary(self, seed):
        lowered = lower(random_source(seed))
        absorbed, frames = absorb_virtual_z(lowered)
        assert absorbed.count(GateKind.RZ) == 0
        restored = absorbed.extend(
            Gate.rz(angle, qubit) for qubit, angle in enumerate(frames)
        )
        assert phase_distance(
            circuit_unitary(lowered), circuit_unitary(restored)
        ) < 1e-8

    def test_frames_reset_at_measurement(self):
        circuit = Circuit(1, [Gate.rz(0.4, 0), Gate.measure(0)])
        absorbed, frames = absorb_virtual_z(circuit)
        assert frames == (0.0,)
        assert [_.kind for _ in absorbed.gates] == [GateKind.MEASURE]

    def test_hadamard_lowers_to_r_and_rz(self):
        kinds = [_.kind for _ in decompose_1q(H)]
        assert kinds == [GateKind.R, GateKind.RZ]


class TestRouting:
    def test_busiest_qubit_sits_on_center(self):
        circuit = Circuit(
            3, [Gate.cz(1, 0), Gate.cz(1, 2), Gate.cnot(0, 1)]
        )
        layout = initial_layout(circuit, Topology.star())
        assert layout[1] == Topology.star().center
        assert len(set(layout)) == 3

    def test_idle_circuit_keeps_identity_layout(self):
        assert initial_layout(
            Circuit(3, [Gate.h(0)]), Topology.star()
        ) == (0, 1, 2)

    def test_routed_gates_follow_edges(self):
        star = Topology.star()
        circuit = Circuit(3, [Gate.cz(0, 1), Gate.cz(1, 2), Gate.cz(0, 2)])
        routed, layout = route(circuit, star, (0, 1, 3))
        for gate in routed.gates:
            if len(gate.qubits) == 2:
                assert star.has_edge(*gate.qubits)
        assert sorted(layout) == sorted(set(layout))

    def test_invalid_layout(self):
        with pytest.raises(TranspileError):
            route(Circuit(2, [Gate.cz(0, 1)]), Topology.star(), (0, 0))


class TestFormats:
    def test_parse_angle(self):
        assert parse_angle('-3*pi/4') == pytest.approx(-3 * pi / 4)
        assert parse_angle(' 0.5 ') == 0.5
        with pytest.raises(CircuitError):
            parse_angle('__import__("os")')

    def test_json_keeps_native_fields(self):
        native = transpile(random_source(2))
        restored = from_json(to_json(native))
        assert restored == native
        np.testing.assert_allclose(restored.final_frames, native.final_frames)

    def test_qasm_keeps_unitary(self):
        source = random_source(6, num_qubits=3)
        parsed = from_qasm(to_qasm(source))
        assert phase_distance(
            circuit_unitary(source), circuit_unitary(parsed)
        ) < 1e-8

    def test_qasm_measurements(self):
        text = to_qasm(Circuit(2, [Gate.h(0), Gate.measure(0, 1)]))
        assert 'measure q[1] -> c[1];' in text
        assert from_qasm(text).measured_qubits == (0, 1)

    def test_qasm_needs_a_register(self):
        with pytest.raises(CircuitError):
            from_qasm('h q[0];')

    def test_invalid_json(self):
        with pytest.raises(CircuitError):
            from_json(b'{"gates": []}')
