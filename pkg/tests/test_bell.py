from math import pi, sqrt

import numpy as np
import pytest

from lib.bell import (
    chsh_point,
    chsh_scan,
    chsh_theory,
    compare_calibrations,
    ghz5_circuit,
    ghz_entropies,
    ghz_state,
    mermin_estimate,
    mermin_monomials,
)
from lib.bell.chsh import default_thetas
from lib.bell.ghz import FIRST_PAIR, GHZ_PAIR, LAST_TRIPLE, monomial_theory
from lib.models.mitigation import Mitigation
from lib.observables import von_neumann_entropy
from lib.sim import partial_trace, run_statevector, state_fidelity

BEST_ANGLE = 7 * pi / 4


class TestChsh:
    def test_theory(self):
        assert chsh_theory(0) == pytest.approx(2)
        assert chsh_theory(BEST_ANGLE) == pytest.approx(2 * sqrt(2))
        assert chsh_theory(3 * pi / 4) == pytest.approx(-2 * sqrt(2))

    def test_default_grid(self):
        assert default_thetas(4) == pytest.approx([0, pi / 2, pi, 3 * pi / 2])

    def test_maximal_violation(self, noiseless):
        point = chsh_point(BEST_ANGLE, 10000, noiseless)
        assert point.estimate.value == pytest.approx(2 * sqrt(2), abs=0.06)
        assert point.violation
        assert set(point.correlators) == {'QS', 'RS', 'RT', 'QT'}

    def test_no_violation_at_zero(self, noiseless):
        point = chsh_point(0.0, 10000, noiseless)
        assert point.estimate.value == pytest.approx(2, abs=0.06)
        assert point.correlators['QS'].value == pytest.approx(1)

    def test_readout_mitigation_restores_violation(self, readout_flips):
        raw = chsh_point(BEST_ANGLE, 10000, readout_flips, None, 4)
        mitigated = chsh_point(
            BEST_ANGLE, 10000, readout_flips, Mitigation(rem=True), 4
        )
        assert raw.estimate.value == pytest.approx(
            2 * sqrt(2) * 0.94**2, abs=0.06
        )
        assert mitigated.estimate.value == pytest.approx(
            2 * sqrt(2), abs=0.08
        )

    @pytest.mark.anyio
    async def test_scan_keeps_order(self, noiseless):
        thetas = default_thetas(4)
        points = await chsh_scan(thetas, 2000, noiseless, None, 1)
        assert [_.theta for _ in points] == thetas
        for point in points:
            assert point.estimate.value == pytest.approx(
                point.theory, abs=0.15
            )

    @pytest.mark.anyio
    async def test_scan_is_seeded(self, readout_flips):
        first = await chsh_scan([0.3], 1000, readout_flips, None, 8)
        second = await chsh_scan([0.3], 1000, readout_flips, None, 8)
        assert first == second


class TestGhz:
    def test_circuit_prepares_ghz(self):
        circuit = ghz5_circuit()
        assert circuit.num_qubits == 5
        assert circuit.count('cx') == 4
        assert state_fidelity(
            run_statevector(circuit), ghz_state()
        ) == pytest.approx(1)

    def test_monomials(self):
        monomials = mermin_monomials()
        assert len(monomials) == 16
        assert monomials[0] == ('XXXXX', 1)
        assert dict(monomials)['YYXXX'] == -1
        assert dict(monomials)['XYYYY'] == 1

    def test_monomial_theory(self):
        assert monomial_theory('XXXXX') == 1
        assert monomial_theory('YYXXX') == -1
        assert monomial_theory('YYYYX') == 1

    @pytest.mark.anyio
    async def test_noiseless_mermin_is_maximal(self, noiseless):
        report = await mermin_estimate(500, noiseless)
        assert report.theory == 16
        assert report.aggregate.value == pytest.approx(16)
        assert report.violation
        assert report.summary()['classical_bound'] == 4

    @pytest.mark.anyio
    async def test_readout_noise_lowers_mermin(self, readout_flips):
        report = await mermin_estimate(2000, readout_flips, None, 2)
        assert 4 < report.aggregate.value < 16

    def test_analytic_entropies(self):
        state = run_statevector(ghz5_circuit())
        assert von_neumann_entropy(state) == pytest.approx(0, abs=1e-9)
        for keep in (FIRST_PAIR, LAST_TRIPLE):
            assert von_neumann_entropy(
                partial_trace(state, keep)
            ) == pytest.approx(1)
        assert state_fidelity(partial_trace(state, FIRST_PAIR), GHZ_PAIR) == (
            pytest.approx(1)
        )

    @pytest.mark.parametrize('num_qubits', [5, 2, 3])
    def test_uniform_mixture_bounds(self, num_qubits):
        dim = 2**num_qubits
        assert von_neumann_entropy(np.eye(dim) / dim) == pytest.approx(
            num_qubits
        )

    @pytest.mark.slow
    @pytest.mark.anyio
    async def test_entropies(self, noiseless):
        entropies = await ghz_entropies(3500, noiseless, 0, False)
        assert entropies['settings'] == 243
        assert entropies['entropy_12'] == pytest.approx(1, abs=0.05)
        assert entropies['fidelity_12'] > 0.99
        # clipping keeps the positive shot-noise eigenvalues
        assert entropies['entropy_345'] == pytest.approx(1, abs=0.12)
        assert 0.85 < entropies['entropy_full'] < 1.05
        assert entropies['fidelity'] > 0.85

    @pytest.mark.anyio
    async def test_calibration_comparison(self):
        rows = await compare_calibrations(
            ['good', 'degraded'], 4000, 0, 4000
        )
        good, degraded = rows
        assert good['profile'] == 'good calibration'
        assert good['fidelity'] > degraded['fidelity']
        for row in rows:
            assert row['rem_distance'] < row['raw_distance']
