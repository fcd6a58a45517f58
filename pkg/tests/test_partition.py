import math

import pytest

from hamdeck.errors import InputError
from hamdeck.graphs import Graph, complete_graph, cycle_graph, empty_graph
from hamdeck.partition import (
    PipelineParams,
    TriPartition,
    default_params,
    derive_params,
    load_tri_partition,
    patch_probability,
    save_tri_partition,
    tri_partition,
    verify_partition,
)


class TestDeriveParams:
    def test_dense_example(self):
        p = derive_params(c=1.0, eps=0.05, gamma=0.01, tau=0.2)
        assert p.alpha == pytest.approx(0.15)
        assert p.delta == pytest.approx(0.01)
        assert p.nu == pytest.approx(0.00025)

    def test_eps_range_enforced(self):
        with pytest.raises(InputError):
            derive_params(c=1.0, eps=0.2, gamma=0.01, tau=0.2)

    def test_delta_picks_the_minimum(self):
        p = derive_params(c=0.6, eps=0.05, gamma=0.05, tau=0.3)
        assert p.delta == pytest.approx(0.006)

    def test_chain_validated_on_construction(self):
        with pytest.raises(InputError):
            PipelineParams(
                c=1.0, eps=0.05, delta=0.05, gamma=0.01, nu=0.00025, tau=0.2,
                alpha=0.15,
            )
        with pytest.raises(InputError):
            PipelineParams(
                c=1.0, eps=0.05, delta=0.01, gamma=0.01, nu=0.00025, tau=0.2,
                alpha=0.3,
            )

    def test_patch_probability_clamped(self):
        assert patch_probability(2) == 0.5
        assert patch_probability(3) == 0.5
        assert patch_probability(51) == pytest.approx(1 / math.log(51))


class TestTriPartition:
    def test_k21_partition_is_exact(self):
        g = complete_graph(21)
        tp = tri_partition(g, default_params(g, seed=0))
        union = tp.core.edges | tp.patch.edges | tp.residual.edges
        assert union == g.edges
        total = len(tp.core.edges) + len(tp.patch.edges) + len(tp.residual.edges)
        assert total == g.edge_count

    def test_core_is_even_regular(self):
        g = complete_graph(21)
        tp = tri_partition(g, default_params(g, seed=1))
        assert tp.core.regular_degree() == tp.core_degree
        assert tp.core_degree % 2 == 0

    def test_deterministic(self):
        g = complete_graph(21)
        a = tri_partition(g, default_params(g, seed=9))
        b = tri_partition(g, default_params(g, seed=9))
        assert (a.core, a.patch, a.residual) == (b.core, b.patch, b.residual)

    def test_seeds_differ(self):
        g = complete_graph(21)
        a = tri_partition(g, default_params(g, seed=0))
        b = tri_partition(g, default_params(g, seed=1))
        assert a.patch != b.patch

    def test_sparse_input_rejected(self):
        with pytest.raises(InputError):
            tri_partition(cycle_graph(6), derive_params(0.9, 0.05, 0.01, 0.2))

    def test_odd_degree_rejected(self):
        with pytest.raises(InputError):
            tri_partition(complete_graph(4), derive_params(0.5, 0.05, 0.01, 0.2))

    def test_irregular_rejected(self):
        g = Graph(4, frozenset({(0, 1), (1, 2)}))
        with pytest.raises(InputError):
            tri_partition(g, derive_params(0.1, 0.05, 0.01, 0.2))

    def test_split_fractions_concentrate(self):
        # over seeds at n >= 50: |patch|/|E| within +-50% of 1/ln n, raw
        # residual fraction within +-50% of eps
        g = complete_graph(51)
        target = 1 / math.log(51)
        patch_fracs = []
        residual_fracs = []
        for seed in range(5):
            tp = tri_partition(g, default_params(g, seed=seed))
            patch_fracs.append(tp.patch.edge_count / g.edge_count)
            residual_fracs.append(tp.stats["raw_residual_edges"] / g.edge_count)
        patch_mean = sum(patch_fracs) / len(patch_fracs)
        residual_mean = sum(residual_fracs) / len(residual_fracs)
        assert 0.5 * target <= patch_mean <= 1.5 * target
        assert 0.025 <= residual_mean <= 0.075


class TestVerifyPartition:
    def test_valid_partition_passes_hard_bullets(self):
        g = complete_graph(21)
        tp = tri_partition(g, default_params(g, seed=0))
        report = verify_partition(tp, graph=g, seed=0)
        assert report.partition_exact
        assert report.core_regular and report.core_degree_even
        assert report.expander.holds
        assert report.ok

    def test_moved_core_edge_breaks_regularity(self):
        g = complete_graph(21)
        tp = tri_partition(g, default_params(g, seed=0))
        moved = sorted(tp.core.edges)[0]
        mutated = TriPartition(
            core=tp.core.subtract({moved}),
            patch=tp.patch.union({moved}),
            residual=tp.residual,
            params=tp.params,
            core_degree=tp.core_degree,
        )
        report = verify_partition(mutated, graph=g, seed=0)
        assert not report.core_regular
        assert not report.ok

    def test_emptied_residual_fails_expansion(self):
        g = complete_graph(21)
        tp = tri_partition(g, default_params(g, seed=0))
        mutated = TriPartition(
            core=tp.core,
            patch=Graph(g.n, tp.patch.edges | tp.residual.edges),
            residual=empty_graph(g.n),
            params=tp.params,
            core_degree=tp.core_degree,
        )
        report = verify_partition(mutated, graph=g, seed=0)
        assert not report.expander.holds
        assert report.expander.witness is not None
        assert not report.ok

    def test_literal_threshold_reported(self):
        g = complete_graph(21)
        tp = tri_partition(g, default_params(g, seed=0))
        report = verify_partition(tp, graph=g, seed=0)
        assert report.patch_density_literal_threshold == pytest.approx(21**1.6)
        # n^1.6 = 131 exceeds the whole patch at n=21; literal check reports
        assert not report.patch_density_literal_ok


def test_save_load_round_trip(tmp_path):
    g = complete_graph(21)
    tp = tri_partition(g, default_params(g, seed=4))
    prefix = str(tmp_path / "part")
    paths = save_tri_partition(tp, prefix)
    assert len(paths) == 4
    loaded = load_tri_partition(prefix)
    assert (loaded.core, loaded.patch, loaded.residual) == (
        tp.core,
        tp.patch,
        tp.residual,
    )
    assert loaded.core_degree == tp.core_degree
