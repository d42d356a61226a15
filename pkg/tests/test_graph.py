import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gedwalk.errors import GraphFormatError
from gedwalk.graph import (
    GeneratorSpec,
    Graph,
    gen_barabasi_albert,
    gen_erdos_renyi,
    largest_connected_component,
    load_edge_list,
    normalize_symmetric,
    reverse,
    write_edge_list,
)
from gedwalk.walks import estimate_sigma_max

from conftest import small_graphs


def write(tmp_path, text, name="g.txt"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestLoadEdgeList:
    def test_path_graph(self, tmp_path):
        g = load_edge_list(write(tmp_path, "0 1\n1 2"))
        assert (g.n, g.m, g.deg_max) == (3, 2, 2)
        assert not g.weighted

    def test_comments_duplicates_loops_one_indexed(self, tmp_path):
        g = load_edge_list(write(tmp_path, "% c\n1 2\n2 1\n1 1"), one_indexed=True)
        assert (g.n, g.m) == (2, 1)
        assert g.labels.tolist() == [1, 2]

    def test_directed_duplicate_arc(self, tmp_path):
        g = load_edge_list(write(tmp_path, "0 1\n0 1"), directed=True)
        assert (g.n, g.m) == (2, 1)
        assert g.successors(0).tolist() == [1]
        assert g.successors(1).tolist() == []

    def test_first_appearance_order(self, tmp_path):
        g = load_edge_list(write(tmp_path, "# hdr\n7 3\n3 9\n"))
        assert g.labels.tolist() == [7, 3, 9]
        assert g.successors(1).tolist() == [0, 2]

    def test_weights(self, tmp_path):
        g = load_edge_list(write(tmp_path, "0 1 0.5\n1 2 1.0\n"))
        assert g.weighted
        assert g.deg_max == pytest.approx(1.5)

    @pytest.mark.parametrize("text", ["0 1 1.5\n", "0 1 0\n", "0 x\n", "0 1 2 3\n", "0 1\n1 2 0.5\n"])
    def test_malformed(self, tmp_path, text):
        with pytest.raises(GraphFormatError):
            load_edge_list(write(tmp_path, text))

    def test_zero_id_under_one_indexed(self, tmp_path):
        with pytest.raises(GraphFormatError):
            load_edge_list(write(tmp_path, "0 1\n"), one_indexed=True)

    def test_missing_file(self, tmp_path):
        with pytest.raises(GraphFormatError):
            load_edge_list(tmp_path / "nope.txt")

    def test_write_roundtrip(self, tmp_path):
        g = gen_barabasi_albert(30, 2, 5)
        write_edge_list(g, tmp_path / "out.txt")
        assert load_edge_list(tmp_path / "out.txt").m == g.m


class TestLCC:
    def test_tie_break_smallest_id(self):
        tri = [(0, 1), (1, 2), (0, 2)]
        g = Graph.from_edges(7, [(a + 4, b + 4) for a, b in tri] + [(a + 1, b + 1) for a, b in tri])
        lcc = largest_connected_component(g)
        assert (lcc.n, lcc.m) == (3, 3)
        assert lcc.labels.tolist() == [1, 2, 3]

    def test_connected_identity(self, P3):
        assert largest_connected_component(P3) == P3

    def test_size_wins(self):
        g = Graph.from_edges(5, [(3, 4), (0, 1), (1, 2), (0, 2)])
        lcc = largest_connected_component(g)
        assert (lcc.n, lcc.m) == (3, 3)

    def test_empty(self):
        g = Graph.from_edges(0, [])
        assert largest_connected_component(g).n == 0

    def test_directed_weak(self):
        g = Graph.from_edges(4, [(0, 1), (2, 1)], directed=True)
        assert largest_connected_component(g).n == 3

    @given(small_graphs())
    def test_idempotent(self, g):
        once = largest_connected_component(g)
        assert largest_connected_component(once) == once


class TestReverse:
    def test_directed_arc(self):
        r = reverse(Graph.from_edges(2, [(0, 1)], directed=True))
        assert r.successors(1).tolist() == [0] and r.successors(0).tolist() == []

    def test_undirected_equal(self, P3):
        assert reverse(P3) == P3

    def test_directed_cycle(self):
        r = reverse(Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)], directed=True))
        assert [r.successors(v).tolist() for v in range(3)] == [[2], [0], [1]]

    @given(small_graphs())
    def test_involution(self, g):
        assert reverse(reverse(g)) == g


class TestNormalize:
    def test_K3(self, K3):
        assert np.allclose(normalize_symmetric(K3).out_w, 0.5)

    def test_P3(self, P3):
        w = normalize_symmetric(P3).out_w
        assert np.allclose(w, 1 / math.sqrt(2))

    def test_single_edge(self):
        assert normalize_symmetric(Graph.from_edges(2, [(0, 1)])).out_w.tolist() == [1.0, 1.0]

    def test_rejects_isolated_and_directed(self):
        with pytest.raises(GraphFormatError):
            normalize_symmetric(Graph.from_edges(3, [(0, 1)]))
        with pytest.raises(GraphFormatError):
            normalize_symmetric(Graph.from_edges(2, [(0, 1)], directed=True))

    @settings(max_examples=40)
    @given(small_graphs(min_n=2, directed=False))
    def test_structure_and_sigma(self, g):
        g = largest_connected_component(g)
        if g.m == 0:
            return
        h = normalize_symmetric(g)
        assert np.array_equal(h.out_idx, g.out_idx) and np.array_equal(h.out_ptr, g.out_ptr)
        assert ((h.out_w > 0) & (h.out_w <= 1)).all()
        assert estimate_sigma_max(h, tol=1e-9) <= 1 + 1e-6


class TestGenerators:
    def test_er_complete(self):
        g = gen_erdos_renyi(4, 1.0, 123)
        assert g.m == 6

    def test_er_empty(self):
        assert gen_erdos_renyi(100, 0.0, 5).m == 0

    def test_er_edge_count(self):
        g = gen_erdos_renyi(1000, 0.04, 1)
        pairs = 1000 * 999 // 2
        mean, var = pairs * 0.04, pairs * 0.04 * 0.96
        assert abs(g.m - mean) <= 4 * math.sqrt(var)

    def test_er_tiny_p(self):
        # geometric gaps near the int64 limit must not wrap around
        assert gen_erdos_renyi(40, 5e-324, 0).m == 0
        assert gen_erdos_renyi(40, 1e-17, 3).m == 0

    def test_er_reproducible(self):
        assert gen_erdos_renyi(300, 0.05, 9) == gen_erdos_renyi(300, 0.05, 9)
        assert gen_erdos_renyi(300, 0.05, 9) != gen_erdos_renyi(300, 0.05, 10)

    def test_er_pair_index_decoding(self):
        # every pair of K_n appears exactly once at p = 1
        g = gen_erdos_renyi(60, 1.0, 0)
        assert g.m == 60 * 59 // 2
        assert (g.out_degrees() == 59).all()

    def test_ba_small(self):
        t = gen_barabasi_albert(5, 1, 42)
        assert t.m == 4 and largest_connected_component(t).n == 5
        assert gen_barabasi_albert(2, 1, 0).m == 1

    def test_ba_structure(self):
        g = gen_barabasi_albert(50, 3, 7)
        assert largest_connected_component(g).n == 50
        assert g.m == 3 + 3 * 47 < 3 * 50

    def test_ba_reproducible(self):
        assert gen_barabasi_albert(200, 4, 3) == gen_barabasi_albert(200, 4, 3)

    @pytest.mark.parametrize("args", [(5, 0, 1), (5, 5, 1)])
    def test_ba_bad_params(self, args):
        with pytest.raises(ValueError):
            gen_barabasi_albert(*args)

    def test_spec_parse(self):
        spec = GeneratorSpec.parse("er,100,0.1,3")
        assert spec.model == "erdos-renyi" and spec.build().n == 100
        with pytest.raises(ValueError):
            GeneratorSpec.parse("rmat,10,1,1")
        with pytest.raises(ValueError):
            GeneratorSpec("er", 10, 1.5)

    @settings(max_examples=30)
    @given(st.integers(1, 40), st.floats(0, 1), st.integers(0, 2**63))
    def test_degree_sum(self, n, p, seed):
        g = gen_erdos_renyi(n, p, seed)
        assert g.out_degrees().sum() == 2 * g.m
        assert g.deg_max == (g.out_degrees().max() if n else 0)
