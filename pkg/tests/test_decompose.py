import pytest

from hamdeck.decompose import (
    _plan_steps,
    complete_residual,
    decompose_odd,
    decompose_pipeline,
    find_perfect_matching,
    iter_residual_decompositions,
    run_pipeline,
)
from hamdeck.errors import BudgetError, InfeasibleError, InputError
from hamdeck.graphs import build_graph, complete_graph, cycle_graph
from hamdeck.walecki import verify_decomposition

from conftest import petersen


class TestCompleteResidual:
    def test_k5_decomposes_into_two_cycles(self):
        deco = complete_residual(complete_graph(5))
        assert deco.cycle_count == 2
        assert verify_decomposition(complete_graph(5), deco).ok

    def test_c7_is_its_own_decomposition(self):
        deco = complete_residual(cycle_graph(7))
        assert deco.cycles == ((0, 1, 2, 3, 4, 5, 6),)

    def test_two_disjoint_triangles_infeasible(self):
        g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        with pytest.raises(InfeasibleError):
            complete_residual(g)

    def test_odd_degree_rejected(self):
        with pytest.raises(InputError):
            complete_residual(complete_graph(4))

    def test_irregular_rejected(self):
        with pytest.raises(InputError):
            complete_residual(build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]))

    def test_empty_graph_gives_empty_decomposition(self):
        deco = complete_residual(build_graph(4, []))
        assert deco.cycle_count == 0

    def test_budget_error_is_distinct(self):
        with pytest.raises(BudgetError):
            complete_residual(complete_graph(9), node_budget=5)

    def test_enumerates_all_k5_decompositions(self):
        decos = list(iter_residual_decompositions(complete_graph(5)))
        assert len(decos) == 6
        assert len({d.cycles for d in decos}) == 6
        for d in decos:
            assert verify_decomposition(complete_graph(5), d).ok

    def test_enumeration_matches_counting_oracle(self):
        from hamdeck.counting import enumerate_decompositions

        ours = {d.cycles for d in iter_residual_decompositions(complete_graph(5))}
        oracle = {
            tuple(sorted(cycles)) for cycles in enumerate_decompositions(complete_graph(5))
        }
        assert ours == oracle

    def test_enumeration_matches_counts_across_corpus(self):
        # two independent enumerators (structural DFS here, bitmask search
        # in the counting oracle) must agree on every small regular graph
        from hamdeck.counting import connected_regular_graphs, count_decompositions_exact

        for n in range(4, 9):
            for r in range(2, n, 2):
                for g in connected_regular_graphs(n, r):
                    if g.edge_count > 16:
                        continue
                    count = count_decompositions_exact(g)
                    decos = list(iter_residual_decompositions(g))
                    assert len(decos) == count, (n, r)
                    assert len({d.cycles for d in decos}) == count


class TestPerfectMatching:
    def test_k6_matching(self):
        m = find_perfect_matching(complete_graph(6))
        assert len(m) == 3
        assert len({v for e in m for v in e}) == 6

    def test_odd_n_infeasible(self):
        with pytest.raises(InfeasibleError):
            find_perfect_matching(complete_graph(5))

    def test_star_infeasible(self):
        star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        with pytest.raises(InfeasibleError):
            find_perfect_matching(star)


class TestPlanSteps:
    def test_default_step_count_rounded(self):
        # core degree 12, eps*r = 1: (12-1)/2 = 5.5 rounds to 4 to keep the
        # working core at degree >= 4
        assert _plan_steps(12, 0.05, 20, None) == 4

    def test_zero_when_core_is_thin(self):
        assert _plan_steps(4, 0.05, 8, None) == 0

    def test_override_caps(self):
        assert _plan_steps(26, 0.05, 50, 3) == 3


class TestPipeline:
    def test_k9_full_decomposition(self):
        g = complete_graph(9)
        deco = decompose_pipeline(g, seed=0)
        assert deco.cycle_count == 4
        assert verify_decomposition(g, deco).ok

    def test_k21_run_reports_stages(self):
        g = complete_graph(21)
        run = run_pipeline(g, seed=0)
        assert run.rotation_cycles + run.completed_cycles == 10
        assert verify_decomposition(g, run.decomposition).ok
        assert run.partition_stats["core_degree"] % 2 == 0

    def test_odd_degree_rejected(self):
        with pytest.raises(InputError):
            decompose_pipeline(petersen(), seed=0)

    def test_small_n_rejected(self):
        with pytest.raises(InputError):
            decompose_pipeline(cycle_graph(4), seed=0)

    def test_max_steps_override(self):
        from hamdeck.partition import default_params

        g = complete_graph(21)
        run = run_pipeline(g, default_params(g, seed=0, max_steps=1))
        assert run.rotation_cycles <= 1
        assert verify_decomposition(g, run.decomposition).ok

    def test_deterministic(self):
        g = complete_graph(9)
        assert decompose_pipeline(g, seed=5) == decompose_pipeline(g, seed=5)

    def test_cocktail_party_graph(self):
        # K20 minus a perfect matching: 18-regular, decomposable
        g = complete_graph(20).subtract({(2 * i, 2 * i + 1) for i in range(10)})
        run = run_pipeline(g, seed=0)
        assert run.decomposition.cycle_count == 9
        assert verify_decomposition(g, run.decomposition).ok

    def test_complete_graph_minus_hamilton_cycles(self):
        # peeling two known cycles off K21 leaves a 16-regular graph that
        # still decomposes (the remaining construction cycles certify it)
        from hamdeck.walecki import cycle_edges, walecki_decomposition

        deco = walecki_decomposition(21)
        removed = cycle_edges(deco.cycles[0]) | cycle_edges(deco.cycles[1])
        g = complete_graph(21).subtract(removed)
        run = run_pipeline(g, seed=1)
        assert run.decomposition.cycle_count == 8
        assert verify_decomposition(g, run.decomposition).ok


class TestDecomposeOdd:
    def test_k6(self):
        g = complete_graph(6)
        deco = decompose_odd(g, seed=0)
        assert deco.cycle_count == 2
        assert deco.matching is not None and len(deco.matching) == 3
        assert verify_decomposition(g, deco).ok

    def test_k12(self):
        g = complete_graph(12)
        deco = decompose_odd(g, seed=0)
        assert deco.cycle_count == 5
        assert verify_decomposition(g, deco).ok

    def test_k12_with_params_from_the_odd_graph(self):
        # params derived from the 11-regular input must still fit the
        # 10-regular remainder
        from hamdeck.partition import default_params

        g = complete_graph(12)
        deco = decompose_odd(g, default_params(g, seed=0), seed=0)
        assert deco.cycle_count == 5
        assert verify_decomposition(g, deco).ok

    def test_even_degree_rejected(self):
        with pytest.raises(InputError):
            decompose_odd(complete_graph(7), seed=0)

    def test_k2_degenerate(self):
        g = complete_graph(2)
        deco = decompose_odd(g, seed=0)
        assert deco.cycle_count == 0
        assert deco.matching == ((0, 1),)
        assert verify_decomposition(g, deco).ok

    def test_petersen_infeasible_by_budget_or_proof(self):
        # 3-regular with a perfect matching, but the 2-factor left over is
        # two 5-cycles, never a Hamilton cycle
        with pytest.raises((InfeasibleError, BudgetError)):
            decompose_odd(petersen(), seed=0)
