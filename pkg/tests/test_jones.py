from math import pi

import numpy as np
import pytest

from lib.backend import Backend
from lib.errors import AdmissibilityError
from lib.jones import (
    CLOSED_BRACKETS,
    CLOSED_JONES,
    TLRep,
    admissible_grid,
    braid_matrix,
    estimate_knot_trace,
    is_admissible,
    jones_polynomial,
    kauffman_bracket_closure,
    knot_point,
    trace_circuit,
)
from lib.models.knot import NAMED_BRAIDS, BraidWord
from lib.models.mitigation import Mitigation
from lib.models.noise import NoiseProfile
from lib.sim import run_statevector

ANGLES = [0.1, pi / 2, 1.3, 2.0, 3.0, 4.3, 6.0]


class TestAlgebra:
    def test_admissibility(self):
        assert is_admissible(0)
        assert is_admissible(pi / 6)
        assert not is_admissible(pi / 4)
        with pytest.raises(AdmissibilityError):
            TLRep(pi / 4)

    def test_grid(self):
        grid = admissible_grid(24)
        assert len(grid) == 24
        assert all(is_admissible(_) for _ in grid)
        assert len(admissible_grid(7)) == 7
        with pytest.raises(AdmissibilityError):
            admissible_grid(0)

    @pytest.mark.parametrize('theta', ANGLES)
    def test_braid_relation(self, theta):
        rep = TLRep(theta)
        left = braid_matrix(rep, BraidWord.parse('1,2,1'))
        right = braid_matrix(rep, BraidWord.parse('2,1,2'))
        np.testing.assert_allclose(left, right, atol=1e-10)

    @pytest.mark.parametrize('theta', ANGLES)
    def test_inverse_letters(self, theta):
        rep = TLRep(theta)
        np.testing.assert_allclose(
            braid_matrix(rep, BraidWord.parse('2,-2,1,-1')),
            np.eye(2),
            atol=1e-10,
        )

    @pytest.mark.parametrize('name', sorted(NAMED_BRAIDS))
    @pytest.mark.parametrize('theta', ANGLES)
    def test_closed_forms(self, name, theta):
        rep = TLRep(theta)
        word = BraidWord.parse(name)
        assert kauffman_bracket_closure(rep, word) == pytest.approx(
            CLOSED_BRACKETS[name](rep.a)
        )
        assert jones_polynomial(rep, word) == pytest.approx(
            CLOSED_JONES[name](rep.a)
        )

    def test_unknot_is_invariant_under_stabilization(self):
        rep = TLRep(1.2)
        assert jones_polynomial(
            rep, BraidWord.parse('1,-1,1')
        ) == pytest.approx(1)


class TestTrace:
    @pytest.mark.parametrize('theta', [0.2, 1.2])
    def test_ancilla_reads_the_trace(self, theta):
        u = braid_matrix(TLRep(theta), BraidWord.parse('trefoil'))
        state = run_statevector(trace_circuit(u))
        x = np.array([[0, 1], [1, 0]])
        y = np.array([[0, -1j], [1j, 0]])
        expected = []
        for pauli in (x, y):
            operator = np.kron(pauli, np.eye(4))
            expected.append(np.vdot(state.data, operator @ state.data))
        assert expected[0].real == pytest.approx(u.trace().real / 2)
        assert expected[1].real == pytest.approx(u.trace().imag / 2)

    def test_knot_point(self, noiseless):
        word = BraidWord.parse('hopf')
        report = knot_point(word, 1.2, 20000, noiseless, None, 3)
        assert report.writhe == 2
        assert report.estimated_trace.real == pytest.approx(
            report.trace.real, abs=0.06
        )
        assert report.estimated_trace.imag == pytest.approx(
            report.trace.imag, abs=0.06
        )
        row = report.to_dict()
        assert row['braid'] == '1,1'
        assert row['methods'] == []

    @pytest.mark.parametrize('name', ['hopf', 'trefoil'])
    @pytest.mark.parametrize('theta', [0.2, 1.2, 2.0])
    def test_noiseless_trace_within_four_sigma(self, noiseless, name, theta):
        report = knot_point(BraidWord.parse(name), theta, 20000, noiseless)
        for part, exact in (
            (report.re_trace, report.trace.real),
            (report.im_trace, report.trace.imag),
        ):
            assert abs(part.value - exact) <= 4 * part.stderr + 1e-9

    @pytest.mark.slow
    @pytest.mark.anyio
    async def test_twirling_and_folding_beat_readout_only(self):
        # coherent overrotation on top of CZ depolarizing
        backend = Backend(
            NoiseProfile('overrotated', 0.002, 0.04, overrotation=0.02)
        )
        word = BraidWord.parse('trefoil')
        thetas = admissible_grid(6)
        errors = {}
        for name, mitigation in (
            ('rem', Mitigation(rem=True)),
            ('full', Mitigation.parse('rem+rc+zne')),
        ):
            total = 0.0
            for seed in range(10):
                reports = await estimate_knot_trace(
                    word, thetas, 8000, backend, mitigation, seed
                )
                total += np.mean(
                    [abs(_.estimated_trace - _.trace) for _ in reports]
                )
            errors[name] = total / 10
        assert errors['full'] < errors['rem']

    @pytest.mark.anyio
    async def test_scan_rejects_inadmissible_angles(self, noiseless):
        with pytest.raises(AdmissibilityError):
            await estimate_knot_trace(
                BraidWord.parse('1'), [0.1, pi / 4], 100, noiseless
            )

    @pytest.mark.anyio
    async def test_scan_keeps_order(self, noiseless):
        thetas = [0.1, 1.5]
        reports = await estimate_knot_trace(
            BraidWord.parse('trefoil'), thetas, 2000, noiseless, None, 2
        )
        assert [_.theta for _ in reports] == thetas
