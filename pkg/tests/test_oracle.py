import pytest

from kconn import (
    GraphError,
    brute_force_kscc,
    build_graph,
    kscc,
    naive_kscc,
    pairwise_k_connected,
)
from kconn.graphio import gen_random


class TestPairwise:
    def test_bitri_edge(self, bitri):
        assert pairwise_k_connected(bitri, 0, 1, 2, "edge")

    def test_bowtie_vertex(self, bowtie):
        assert not pairwise_k_connected(bowtie, 0, 3, 2, "vertex")
        assert pairwise_k_connected(bowtie, 0, 1, 2, "vertex")

    def test_c3_edge(self, c3):
        assert not pairwise_k_connected(c3, 0, 1, 2, "edge")

    def test_same_vertex_rejected(self, c3):
        with pytest.raises(GraphError):
            pairwise_k_connected(c3, 1, 1, 2, "edge")


class TestBruteForce:
    def test_bitri_edge(self, bitri):
        cs = brute_force_kscc(bitri, 2, "edge")
        assert [c.vertices for c in cs.components] == [(0, 1, 2)]

    def test_path_edge_singletons(self):
        g = build_graph(3, [(0, 1), (1, 2)])
        cs = brute_force_kscc(g, 2, "edge")
        assert [c.vertices for c in cs.components] == [(0,), (1,), (2,)]

    def test_bowtie_vertex(self, bowtie):
        cs = brute_force_kscc(bowtie, 2, "vertex")
        assert [c.vertices for c in cs.components] == [(0, 1, 2), (2, 3, 4)]
        assert all(len(c.edges) == 6 for c in cs.components)

    def test_size_limit(self):
        g = gen_random(13, 0.2, 0)
        with pytest.raises(GraphError):
            brute_force_kscc(g, 2, "edge")
        g = gen_random(11, 0.2, 0)
        with pytest.raises(GraphError):
            brute_force_kscc(g, 2, "vertex")

    def test_components_are_maximal(self):
        for seed in range(15):
            g = gen_random(7, 0.35, seed)
            for mode in ("edge", "vertex"):
                cs = brute_force_kscc(g, 2, mode)
                sets = [set(c.vertices) for c in cs.components]
                for a in sets:
                    for b in sets:
                        assert a == b or not a < b


class TestNaive:
    def test_bowtie_vertex(self, bowtie):
        cs = naive_kscc(bowtie, 2, "vertex")
        assert [c.vertices for c in cs.components] == [(0, 1, 2), (2, 3, 4)]

    def test_c3_edge(self, c3):
        cs = naive_kscc(c3, 2, "edge")
        assert [c.vertices for c in cs.components] == [(0,), (1,), (2,)]

    def test_k4b_vertex(self, k4b):
        cs = naive_kscc(k4b, 2, "vertex")
        assert [c.vertices for c in cs.components] == [(0, 1, 2, 3)]

    def test_oracle_chain(self):
        for seed in range(25):
            g = gen_random(8, 0.3, seed)
            for mode in ("edge", "vertex"):
                b = brute_force_kscc(g, 2, mode)
                n = naive_kscc(g, 2, mode)
                h = kscc(g, 2, mode)
                assert b == n == h

    def test_oracle_chain_k3(self):
        for seed in range(12):
            g = gen_random(7, 0.5, seed)
            for mode in ("edge", "vertex"):
                assert brute_force_kscc(g, 3, mode) == naive_kscc(g, 3, mode)
