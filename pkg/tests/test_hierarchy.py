import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kconn import (
    GraphError,
    build_graph,
    check_isolation,
    k_isolated_set,
    k_isolated_set_level,
    kscc,
    naive_kscc,
)
from kconn.graphio import gen_adversarial_chain, gen_random
from kconn.hierarchy import Counters, IsolationResult
from kconn.oracle import brute_force_kscc


def path3():
    return build_graph(3, [(0, 1), (1, 2)])


def planted_almost_tscc():
    """3-cycle T = {0,1,2} reachable only through {3, 4} inside a K6 blob.

    At level 2 the blob is blue and T is white; T is a 3-almost top SCC
    w.r.t. the vertices {3, 4} (vertex mode) or the edges (3,0), (4,0)
    (edge mode).
    """
    edges = [(0, 1), (1, 2), (2, 0), (3, 0), (4, 0), (1, 3)]
    for u in range(3, 9):
        for v in range(3, 9):
            if u != v:
                edges.append((u, v))
    return build_graph(9, edges)


class TestKIsolatedSetLevel:
    def test_bowtie_special_case(self, bowtie):
        res = k_isolated_set_level(bowtie, 1, 2, "vertex")
        assert res.s == [0, 1]
        assert res.z == [2]
        assert res.provenance == "blue-singleton-special"
        assert check_isolation(bowtie, res, 2, "vertex")

    def test_bitri_violates_precondition(self, bitri):
        with pytest.raises(GraphError):
            k_isolated_set_level(bitri, 1, 2, "vertex")

    def test_tscc_branch(self):
        # {0,1} is a white top SCC at level 1; vertices 2 and 4 are blue
        g = build_graph(6, [(0, 1), (1, 0), (0, 4), (1, 4), (2, 4),
                            (4, 2), (4, 3), (4, 5), (3, 2), (5, 2)])
        res = k_isolated_set_level(g, 1, 2, "vertex")
        assert res.provenance == "tscc"
        assert res.s == [0, 1] and res.z == []

    def test_planted_vertex_dominator(self):
        g = planted_almost_tscc()
        res = k_isolated_set_level(g, 2, 3, "vertex")
        assert res.s == [0, 1, 2]
        assert res.z == [3, 4]
        assert res.provenance == "dominator"
        assert check_isolation(g, res, 3, "vertex")

    def test_planted_edge_dominator(self):
        g = planted_almost_tscc()
        res = k_isolated_set_level(g, 2, 3, "edge")
        assert res.s == [0, 1, 2]
        assert res.z == [(3, 0), (4, 0)]
        assert check_isolation(g, res, 3, "edge")

    def test_planted_reverse_side(self):
        # bidirectional triangle T={0,1,2} with three disjoint entries from
        # the blob (so nothing is isolatable forward) but only two exits
        # (0,3), (0,4): in the reverse graph T is almost-top w.r.t. {3,4}
        edges = [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1),
                 (5, 0), (6, 1), (7, 2), (0, 3), (0, 4)]
        for u in range(3, 9):
            for v in range(3, 9):
                if u != v:
                    edges.append((u, v))
        g = build_graph(9, edges)
        res = k_isolated_set_level(g, 2, 3, "vertex")
        assert res.side == "reverse"
        assert res.s == [0, 1, 2]
        assert res.z == [3, 4]
        assert check_isolation(g, res, 3, "vertex")

    def test_blue_superset_special_case(self):
        # k=3, one blue vertex 7: no white top SCC, no 3-dominator from 7,
        # and the level graph minus 7 is strongly connected but has
        # articulation points, so the separator extends the blue set
        edges = [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1),
                 (3, 4), (4, 3), (3, 5), (5, 3), (4, 5), (5, 4),
                 (2, 6), (6, 2), (5, 6), (6, 5), (0, 6),
                 (7, 0), (7, 1), (7, 3), (7, 4), (7, 5),
                 (0, 7), (1, 7), (2, 7), (3, 7), (4, 7)]
        g = build_graph(8, edges)
        res = k_isolated_set_level(g, 2, 3, "vertex")
        assert res.provenance == "blue-superset-special"
        assert res.s == [0, 1]
        assert res.z == [2, 7]
        assert 7 in res.z  # the blue vertex is part of the separator
        assert check_isolation(g, res, 3, "vertex")

    def test_detection_completeness_small_planted(self):
        # any planted k-almost tSCC of size <= 2^i - k + 2 must be detected
        for k, i in ((2, 2), (3, 2), (4, 3)):
            size = 2**i - k + 2
            b = 2**i + 3
            edges = [((j + 1) % size, j) for j in range(size)]  # small cycle
            edges = [(u, v) for (u, v) in edges]
            blob = range(size, size + b)
            for u in blob:
                for v in blob:
                    if u != v:
                        edges.append((u, v))
            for z in range(size, size + k - 1):
                edges.append((z, 0))
            edges.append((0, size))
            g = build_graph(size + b, edges)
            res = k_isolated_set_level(g, i, k, "vertex")
            assert not res.is_empty
            assert check_isolation(g, res, k, "vertex")


class TestKIsolatedSet:
    def test_path_source(self):
        res = k_isolated_set(path3(), 2, "vertex")
        assert res.s == [0] and res.z == []
        assert res.provenance == "whole-graph"

    def test_bowtie(self, bowtie):
        res = k_isolated_set(bowtie, 2, "vertex")
        assert res.s == [0, 1] and res.z == [2]

    def test_bitri_edge_empty(self, bitri):
        assert k_isolated_set(bitri, 2, "edge").is_empty


class TestCheckIsolation:
    def test_bowtie_valid(self, bowtie):
        res = IsolationResult([0, 1], [2], "forward", "whole-graph")
        assert check_isolation(bowtie, res, 2, "vertex")

    def test_bowtie_missing_z(self, bowtie):
        res = IsolationResult([0, 1], [], "forward", "whole-graph")
        assert not check_isolation(bowtie, res, 2, "vertex")

    def test_whole_graph_rejected(self, c3):
        res = IsolationResult([0, 1, 2], [], "forward", "whole-graph")
        assert not check_isolation(c3, res, 2, "vertex")

    def test_edge_mode_exact_z(self, two_cycle_bridge):
        res = IsolationResult([1], [(0, 1)], "forward", "whole-graph")
        assert check_isolation(two_cycle_bridge, res, 2, "edge")
        res2 = IsolationResult([1], [(0, 1), (2, 0)], "forward", "whole-graph")
        assert not check_isolation(two_cycle_bridge, res2, 2, "edge")

    def test_reverse_side(self):
        # {0} is an almost-bottom SCC w.r.t. its single outgoing edge; z is
        # reported in the original orientation
        g = path3()
        res = IsolationResult([0], [(0, 1)], "reverse", "whole-graph")
        assert check_isolation(g, res, 2, "edge")
        plain = IsolationResult([2], [], "reverse", "whole-graph")
        assert check_isolation(g, plain, 2, "edge")


class TestKscc:
    def test_bitri_edge(self, bitri):
        cs = kscc(bitri, 2, "edge")
        assert [c.vertices for c in cs.components] == [(0, 1, 2)]

    def test_bowtie_vertex(self, bowtie):
        cs = kscc(bowtie, 2, "vertex")
        assert [c.vertices for c in cs.components] == [(0, 1, 2), (2, 3, 4)]
        assert all(len(c.edges) == 6 for c in cs.components)
        assert all(not c.degenerate for c in cs.components)

    def test_two_cycle_bridge_edge(self, two_cycle_bridge):
        cs = kscc(two_cycle_bridge, 2, "edge")
        assert [c.vertices for c in cs.components] == [(v,) for v in range(6)]

    def test_k4b_3vertex(self, k4b):
        cs = kscc(k4b, 3, "vertex")
        assert [c.vertices for c in cs.components] == [(0, 1, 2, 3)]
        assert len(cs.components[0].edges) == 12

    def test_k_below_2_rejected(self, c3):
        with pytest.raises(GraphError):
            kscc(c3, 1, "edge")

    def test_empty_and_singleton(self):
        assert kscc(build_graph(0, []), 2, "edge").components == []
        cs = kscc(build_graph(1, []), 2, "vertex")
        assert [c.vertices for c in cs.components] == [(0,)]
        assert cs.components[0].degenerate

    def test_degenerate_leftovers_pruned(self):
        # z ends up as a singleton piece inside one branch; maximality must
        # drop it in favor of the triangle that contains it
        g = build_graph(5, [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1),
                            (0, 3), (3, 4), (4, 3), (4, 0)])
        cs = kscc(g, 2, "vertex")
        assert [c.vertices for c in cs.components] == [(0, 1, 2), (3, 4)]
        assert cs == brute_force_kscc(g, 2, "vertex")

    def test_deep_first_success_level(self):
        # two K20 blocks sharing a cut vertex: nothing is found before the
        # level loop saturates, exercising the first-success size bound
        g = gen_adversarial_chain(2, 20)
        cs = kscc(g, 2, "vertex")
        assert [c.vertices for c in cs.components] == [
            tuple(range(20)), tuple(range(19, 39))
        ]

    def test_chain_components(self):
        for c in (2, 3, 5):
            g = gen_adversarial_chain(c, 3)
            cs = kscc(g, 2, "vertex")
            assert len(cs.components) == c

    def test_matches_brute_force_k2(self):
        for seed in range(40):
            g = gen_random(7, 0.3, seed)
            for mode in ("edge", "vertex"):
                assert kscc(g, 2, mode) == brute_force_kscc(g, 2, mode)

    def test_matches_brute_force_k3(self):
        for seed in range(25):
            g = gen_random(7, 0.5, seed)
            for mode in ("edge", "vertex"):
                assert kscc(g, 3, mode) == brute_force_kscc(g, 3, mode)

    def test_matches_naive_medium(self):
        for seed in range(6):
            g = gen_random(40, 0.1, seed)
            for k in (2, 3):
                for mode in ("edge", "vertex"):
                    assert kscc(g, k, mode).digest() == naive_kscc(g, k, mode).digest()

    def test_edge_mode_partitions(self):
        for seed in range(20):
            g = gen_random(12, 0.25, seed)
            cs = kscc(g, 2, "edge")
            seen = sorted(v for c in cs.components for v in c.vertices)
            assert seen == list(range(g.n))

    def test_vertex_mode_edge_sets_disjoint(self):
        for seed in range(20):
            g = gen_random(12, 0.25, seed)
            cs = kscc(g, 2, "vertex")
            all_edges = [e for c in cs.components for e in c.edges]
            assert len(all_edges) == len(set(all_edges))

    @given(st.integers(0, 10_000))
    @settings(max_examples=20, deadline=None)
    def test_deterministic_digest(self, seed):
        g = gen_random(9, 0.3, seed)
        assert kscc(g, 2, "vertex").digest() == kscc(g, 2, "vertex").digest()

    def test_counters_and_trace(self, bowtie):
        counters = Counters()
        trace = []
        kscc(bowtie, 2, "vertex", counters=counters, trace=trace)
        assert counters.splits >= 1
        assert counters.whole_edges > 0
        events = {ev["event"] for ev in trace}
        assert "split" in events and "component" in events
        split = next(ev for ev in trace if ev["event"] == "split")
        assert {"provenance", "side", "s_size", "z_size"} <= set(split)
