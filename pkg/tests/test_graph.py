import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import locppr as lp


class TestLoadEdgeList:
    def test_multiline_string(self):
        raw = lp.load_edge_list("0 1\n1 2\n")
        assert raw.edges == [(0, 1), (1, 2)]
        assert raw.weights_discarded == 0

    def test_file_object(self):
        raw = lp.load_edge_list(io.StringIO("5 7\n"))
        assert raw.edges == [(5, 7)]

    def test_path(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("# comment\n% other comment\n3 4\n\n4 5\n")
        raw = lp.load_edge_list(str(p))
        assert raw.edges == [(3, 4), (4, 5)]

    def test_weights_counted_and_discarded(self):
        raw = lp.load_edge_list("0 1 2.5\n1 2 0.1 extra\n2 3\n")
        assert raw.edges == [(0, 1), (1, 2), (2, 3)]
        assert raw.weights_discarded == 2

    def test_parse_error_has_line_number(self):
        with pytest.raises(lp.ParseError, match="line 2"):
            lp.load_edge_list("0 1\nnot-a-node x\n")

    def test_single_token_line_rejected(self):
        with pytest.raises(lp.ParseError, match="line 1"):
            lp.load_edge_list("42\n")

    def test_negative_id_rejected(self):
        with pytest.raises(lp.ParseError, match="negative"):
            lp.load_edge_list("0 -1\n")

    def test_empty_input(self):
        with pytest.raises(lp.EmptyInputError):
            lp.load_edge_list("# only comments\n")

    def test_missing_file(self):
        with pytest.raises(lp.InputError):
            lp.load_edge_list("/nonexistent/file.txt")


class TestPreprocess:
    def test_dedup_and_orientation(self):
        g = lp.preprocess(lp.load_edge_list("0 1\n1 0\n0 1\n"))
        assert g.n == 2 and g.m == 1
        assert list(g.neighbors_of(0)) == [1]

    def test_self_loops_dropped(self):
        g = lp.preprocess(lp.load_edge_list("0 0\n0 1\n1 1\n"))
        assert g.n == 2 and g.m == 1

    def test_largest_component_kept(self):
        # component {0,1,2} (triangle) vs {10,11} (edge)
        g = lp.preprocess(lp.load_edge_list("0 1\n1 2\n0 2\n10 11\n"))
        assert g.n == 3 and g.m == 3
        assert list(g.orig_ids) == [0, 1, 2]

    def test_component_tie_broken_by_smallest_original_id(self):
        # two 2-node components; the one containing original id 3 wins
        g = lp.preprocess(lp.load_edge_list("7 9\n3 5\n"))
        assert g.n == 2
        assert list(g.orig_ids) == [3, 5]

    def test_relabel_ascending(self):
        g = lp.preprocess(lp.load_edge_list("100 7\n7 50\n"))
        assert list(g.orig_ids) == [7, 50, 100]
        # node 7 -> 0, 50 -> 1, 100 -> 2; edges (0,2) and (0,1)
        assert list(g.neighbors_of(0)) == [1, 2]

    def test_degenerate_graph(self):
        with pytest.raises(lp.DegenerateGraphError):
            lp.preprocess(lp.load_edge_list("4 4\n"))

    def test_validate_fixtures(self, fixture_graphs):
        for g in fixture_graphs.values():
            assert lp.validate(g)

    def test_degrees_consistent(self, k3):
        assert list(k3.degrees) == [2, 2, 2]
        assert k3.offsets[-1] == 2 * k3.m


class TestVolume:
    def test_volume_sums_degrees(self, k3):
        assert lp.volume(k3, [0, 1]) == 4
        assert lp.volume(k3, []) == 0
        assert lp.volume(k3, range(k3.n)) == 2 * k3.m

    def test_volume_out_of_range(self, k3):
        with pytest.raises(IndexError):
            lp.volume(k3, [99])


class TestCache:
    def test_round_trip(self, tmp_path, ba1000):
        p = tmp_path / "ba.lppr"
        lp.write_cache(ba1000, str(p))
        g2 = lp.read_cache(str(p), name="ba1000")
        assert g2.n == ba1000.n and g2.m == ba1000.m
        assert np.array_equal(g2.offsets, ba1000.offsets)
        assert np.array_equal(g2.neighbors, ba1000.neighbors)

    def test_bad_magic(self, tmp_path):
        p = tmp_path / "bad.lppr"
        p.write_bytes(b"NOPE!" + b"\x00" * 64)
        with pytest.raises(lp.InputError, match="magic"):
            lp.read_cache(str(p))

    def test_truncated(self, tmp_path, k3):
        p = tmp_path / "t.lppr"
        lp.write_cache(k3, str(p))
        data = p.read_bytes()
        p.write_bytes(data[:-4])
        with pytest.raises(lp.InputError, match="truncated"):
            lp.read_cache(str(p))

    def test_load_graph_sniffs_format(self, tmp_path, k3):
        pc = tmp_path / "k3.lppr"
        pt = tmp_path / "k3.txt"
        lp.write_cache(k3, str(pc))
        lp.write_edge_list(k3, str(pt))
        for p in (pc, pt):
            g = lp.load_graph(str(p))
            assert g.n == 3 and g.m == 3


class TestEdgeListRoundTrip:
    def test_write_then_load(self, tmp_path, grid32):
        p = tmp_path / "grid.txt"
        lp.write_edge_list(grid32, str(p))
        g2 = lp.preprocess(lp.load_edge_list(str(p)))
        assert g2.n == grid32.n and g2.m == grid32.m
        assert np.array_equal(g2.neighbors, grid32.neighbors)


class TestGenerators:
    def test_complete_graph(self):
        g = lp.complete_graph(5)
        assert g.n == 5 and g.m == 10
        assert all(d == 4 for d in g.degrees)

    def test_path_graph(self):
        g = lp.path_graph(10)
        assert g.n == 10 and g.m == 9
        assert list(g.degrees) == [1] + [2] * 8 + [1]

    def test_grid_graph(self):
        g = lp.grid_graph(4, 5)
        assert g.n == 20 and g.m == 4 * 4 + 3 * 5
        assert lp.validate(g)

    def test_barabasi_albert_size(self, ba1000):
        assert ba1000.n == 1000
        # seed clique on 4 nodes (6 edges) + 3 edges per remaining node
        assert ba1000.m == 6 + 3 * 996
        assert lp.validate(ba1000)

    def test_barabasi_albert_deterministic(self):
        a = lp.barabasi_albert(200, 3, seed=11)
        b = lp.barabasi_albert(200, 3, seed=11)
        assert np.array_equal(a.neighbors, b.neighbors)
        c = lp.barabasi_albert(200, 3, seed=12)
        assert not np.array_equal(a.neighbors, c.neighbors)

    def test_random_connected_graph(self):
        g = lp.random_connected_graph(40, 0.05, seed=3)
        assert g.n == 40
        assert lp.validate(g)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)),
                min_size=1, max_size=60))
def test_preprocess_invariants_hold_on_random_input(pairs):
    text = "\n".join(f"{u} {v}" for u, v in pairs)
    try:
        g = lp.preprocess(lp.load_edge_list(text + "\n"))
    except (lp.DegenerateGraphError, lp.EmptyInputError):
        return
    assert lp.validate(g)
    assert g.n >= 2
    assert np.all(np.diff(g.orig_ids) > 0)
