import numpy as np
import pytest

from lib.errors import ConfigError
from lib.maxcut import (
    QScorePolicy,
    approximation_ratio,
    brute_force_maxcut,
    cut_value,
    cut_vector,
    format_edge_list,
    maxcut_points,
    optimize_qaoa,
    parse_edge_list,
    qaoa_circuit,
    qscore_run,
    random_graph,
    reduce_virtual_node,
    solve_maxcut,
    spin_energies,
)
from lib.models.graph import Graph
from lib.utils.seeds import make_rng

TRIANGLE = Graph.complete(3)
PATH = Graph(3, [(0, 1), (1, 2)])


class TestGraphs:
    def test_cut_value(self):
        assert cut_value(TRIANGLE, '011') == 2
        assert cut_value(TRIANGLE, '111') == 0
        with pytest.raises(ConfigError):
            cut_value(TRIANGLE, '01')

    def test_cut_vector_fixes_last_node(self):
        assert cut_vector(PATH).tolist() == [1, 1, 2, 0]

    def test_brute_force(self):
        best, optima = brute_force_maxcut(TRIANGLE)
        assert best == 2
        assert optima == ('001', '011', '101')
        assert brute_force_maxcut(Graph.cycle(4)) == (4, ('0101',))

    def test_parse_edge_list(self):
        g = parse_edge_list(['1 2', '2,3  # second', '# comment', ''])
        assert g == PATH
        assert parse_edge_list(['1 2'], 4).n == 4

    @pytest.mark.parametrize('lines', [['0 1'], ['a b'], ['1 2 3'], []])
    def test_invalid_edge_lists(self, lines):
        with pytest.raises(ConfigError):
            parse_edge_list(lines)

    def test_format_is_one_based(self):
        assert format_edge_list(PATH) == '1 2\n2 3\n'

    def test_random_graphs_are_seeded(self):
        a = random_graph(6, 0.5, make_rng(1, 'graph'))
        b = random_graph(6, 0.5, make_rng(1, 'graph'))
        assert a == b
        assert a.num_edges > 0

    @pytest.mark.parametrize('n,p', [(1, 0.5), (4, 0.0), (4, 1.5)])
    def test_invalid_random_graphs(self, n, p):
        with pytest.raises(ConfigError):
            random_graph(n, p, make_rng(0))


class TestQaoa:
    def test_virtual_node_turns_edges_into_fields(self):
        problem = reduce_virtual_node(TRIANGLE)
        assert problem.num_spins == 2
        np.testing.assert_array_equal(problem.couplings, [[0, 1], [1, 0]])
        np.testing.assert_array_equal(problem.fields, [-1, -1])

    @pytest.mark.parametrize('seed', range(5))
    def test_energies_track_cuts(self, seed):
        g = random_graph(6, 0.5, make_rng(seed, 'energies'))
        energies = spin_energies(reduce_virtual_node(g))
        np.testing.assert_allclose(
            (g.num_edges - energies) / 2, cut_vector(g)
        )

    def test_circuit_reads_every_spin(self):
        circuit = qaoa_circuit(reduce_virtual_node(TRIANGLE), 0.3, 0.2)
        assert circuit.num_qubits == 2
        assert circuit.measured_qubits == (0, 1)
        assert circuit.count('cx') == 2

    def test_optimizer_beats_random(self, noiseless):
        problem = reduce_virtual_node(TRIANGLE)
        result = optimize_qaoa(problem, 512, noiseless, 3, None, 4, 20)
        assert result.energy < 0
        assert result.evaluations >= 16
        assert result.distribution.sum() == pytest.approx(1)

    def test_needs_shots(self, noiseless):
        with pytest.raises(ConfigError):
            optimize_qaoa(reduce_virtual_node(PATH), 0, noiseless, 0)

    @pytest.mark.anyio
    async def test_solves_a_path(self, noiseless):
        points, summary = await solve_maxcut(
            PATH, 1024, noiseless, None, 5, 6, 30
        )
        assert summary['optimum'] == 2
        assert summary['answer'] == '101'
        assert summary['solved']
        assert summary['edges'] == [[1, 2], [2, 3]]
        assert [_['bitstring'] for _ in points] == ['001', '011', '101', '111']

    def test_points_carry_cuts(self):
        points = maxcut_points(PATH, [0.25, 0.25, 0.5, 0])
        assert [_['cut'] for _ in points] == [1, 1, 2, 0]
        assert points[2]['probability'] == 0.5


class TestQScore:
    def test_approximation_ratio(self):
        assert approximation_ratio(TRIANGLE, 2) == pytest.approx(1)
        assert approximation_ratio(TRIANGLE, 1.5) == pytest.approx(0)
        assert approximation_ratio(Graph(3), 0) is None

    @pytest.mark.anyio
    async def test_optimal_policy_scores_one(self, noiseless):
        report = await qscore_run(
            (3, 4), 4, 64, 0.5, noiseless, 0, QScorePolicy.OPTIMAL
        )
        for size in (3, 4):
            if report.instances[size]:
                assert report.ratios[size] == pytest.approx(1)
        assert report.policy == 'optimal'

    @pytest.mark.anyio
    async def test_random_policy_scores_zero(self, noiseless):
        report = await qscore_run(
            (5,), 10, 2048, 0.5, noiseless, 2, QScorePolicy.RANDOM
        )
        assert abs(report.ratios[5]) < 0.15
        assert not report.passed(5)

    @pytest.mark.anyio
    async def test_qaoa_passes_small_graphs(self, noiseless):
        report = await qscore_run(
            (3,), 3, 256, 0.8, noiseless, 1, QScorePolicy.QAOA, None, 4, 10
        )
        assert report.qscore == 3
        assert report.skipped[3] + report.instances[3] == 3

    @pytest.mark.slow
    @pytest.mark.anyio
    async def test_qaoa_ratios_stay_between_bounds(self, noiseless):
        report = await qscore_run((3, 4, 5, 6), 10, 2048, 0.5, noiseless, 0)
        for size in (3, 4, 5, 6):
            assert 0.2 < report.ratios[size] < 0.9

    @pytest.mark.anyio
    @pytest.mark.parametrize(
        'sizes,instances', [((7,), 1), ((1,), 1), ((3,), 0)]
    )
    async def test_invalid_runs(self, noiseless, sizes, instances):
        with pytest.raises(ConfigError):
            await qscore_run(sizes, instances, 10, 0.5, noiseless, 0)
