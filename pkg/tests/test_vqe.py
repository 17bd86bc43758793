import numpy as np
import pytest

from lib.errors import ConfigError
from lib.models.vqe import AimParams
from lib.vqe import (
    Convention,
    aim_fermionic_matrix,
    ansatz_circuit,
    build_aim_qubit_hamiltonian,
    energy,
    exact_energy,
    exact_ground_energy,
    parameter_shift_gradient,
    single_particle_energy,
    vqe_optimize,
)

ANGLES = [0.3, -0.8, 1.2, 0.5, -1.1, 0.7, 2.0]
# U=2, V=1, every level at zero
EXACT_GROUND = -4.09486
ANSATZ_MINIMUM = -3.88067


class TestHamiltonian:
    @pytest.mark.parametrize(
        'p',
        [
            AimParams(),
            AimParams(eps_d=-1.0, eps1=0.5, mu=0.2, u=3.0, v=0.7),
        ],
    )
    def test_fermionic_convention_matches_operators(self, p):
        np.testing.assert_allclose(
            build_aim_qubit_hamiltonian(p, Convention.FERMIONIC).matrix(),
            aim_fermionic_matrix(p),
            atol=1e-12,
        )

    def test_ground_energy(self):
        p = AimParams()
        hamiltonian = build_aim_qubit_hamiltonian(p)
        assert exact_ground_energy(p) == pytest.approx(
            np.linalg.eigvalsh(hamiltonian.matrix())[0]
        )
        assert exact_ground_energy(p) == pytest.approx(EXACT_GROUND, abs=1e-5)

    def test_single_particle_limit(self):
        p = AimParams(u=0)
        assert single_particle_energy(p) == pytest.approx(-2)
        assert exact_ground_energy(p, 'fermionic') == pytest.approx(-2)
        with pytest.raises(ConfigError):
            single_particle_energy(AimParams())

    def test_unknown_convention(self):
        with pytest.raises(ConfigError):
            build_aim_qubit_hamiltonian(AimParams(), 'textbook')


class TestAnsatz:
    def test_circuit(self):
        circuit = ansatz_circuit(ANGLES)
        assert circuit.num_qubits == 4
        assert circuit.count('cz') == 3
        assert circuit.count('ry') == 7
        with pytest.raises(ConfigError):
            ansatz_circuit(ANGLES[:6])

    def test_vacuum_has_zero_energy(self):
        hamiltonian = build_aim_qubit_hamiltonian(
            AimParams(), Convention.FERMIONIC
        )
        assert exact_energy([0] * 7, hamiltonian) == pytest.approx(0)

    def test_sampled_energy(self, noiseless):
        hamiltonian = build_aim_qubit_hamiltonian(AimParams())
        exact = energy(ANGLES, hamiltonian, None, noiseless)
        assert exact.stderr == 0
        sampled = energy(ANGLES, hamiltonian, 20000, noiseless, None, 1)
        assert sampled.value == pytest.approx(exact.value, abs=0.1)
        assert sampled.stderr > 0

    @pytest.mark.anyio
    async def test_parameter_shift_is_exact(self, noiseless):
        hamiltonian = build_aim_qubit_hamiltonian(AimParams())
        gradient = await parameter_shift_gradient(
            ANGLES, hamiltonian, None, noiseless
        )
        h = 1e-5
        for index in range(7):
            up, down = list(ANGLES), list(ANGLES)
            up[index] += h
            down[index] -= h
            slope = (
                exact_energy(up, hamiltonian)
                - exact_energy(down, hamiltonian)
            ) / (2 * h)
            assert gradient[index] == pytest.approx(slope, abs=1e-6)


class TestOptimizer:
    @pytest.mark.anyio
    async def test_exact_descent(self, noiseless):
        p = AimParams()
        trace = await vqe_optimize(p, None, 30, noiseless, 0)
        energies = [_.energy for _ in trace.iterations]
        assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))
        assert trace.best.energy >= trace.exact_energy - 1e-9
        assert trace.best.energy < energies[0]
        assert trace.relative_error() is not None
        rows = trace.to_rows()
        assert rows[0]['iteration'] == 0
        assert 'theta_7' in rows[-1]

    @pytest.mark.anyio
    @pytest.mark.parametrize('seed', [0, 3])
    async def test_exact_convergence(self, noiseless, seed):
        trace = await vqe_optimize(AimParams(), None, 200, noiseless, seed)
        assert trace.converged
        assert len(trace.iterations) <= 201
        assert trace.final.gradient_norm < 1e-3
        assert trace.final.energy == pytest.approx(ANSATZ_MINIMUM, abs=1e-3)
        assert trace.exact_energy == pytest.approx(EXACT_GROUND, abs=1e-5)
        # the seven-angle ansatz cannot reach the exact ground state
        assert trace.relative_error() == pytest.approx(0.0523, abs=1e-3)

    @pytest.mark.anyio
    async def test_sampled_steps(self, noiseless):
        trace = await vqe_optimize(AimParams(), 5000, 2, noiseless, 1)
        assert 1 <= len(trace.iterations) <= 3
        for iteration in trace.iterations:
            assert iteration.stderr > 0
            assert (
                iteration.energy
                >= trace.exact_energy - 4 * iteration.stderr
            )

    @pytest.mark.anyio
    @pytest.mark.slow
    async def test_sampled_run_reaches_the_optimum(self, noiseless):
        trace = await vqe_optimize(AimParams(), 5000, 100, noiseless, 0)
        final = trace.final
        assert abs(final.energy - ANSATZ_MINIMUM) < 3 * final.stderr

    @pytest.mark.anyio
    async def test_initial_angles(self, noiseless):
        trace = await vqe_optimize(
            AimParams(), None, 0, noiseless, 0, None, 'printed', ANGLES
        )
        assert len(trace.iterations) == 1
        assert trace.final.theta == pytest.approx(ANGLES)

    @pytest.mark.anyio
    async def test_negative_iterations(self, noiseless):
        with pytest.raises(ConfigError):
            await vqe_optimize(AimParams(), None, -1, noiseless, 0)
