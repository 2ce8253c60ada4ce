import numpy as np
import pytest
from hypothesis import given

from gemfree.errors import CapacityError, ParameterError
from gemfree.graph import (
    FamilyParams,
    Graph,
    build_family,
    complete,
    components,
    cycle,
    edge_count_s_minus,
    empty,
    fan,
    gem,
    is_connected,
    is_isolated_free,
    join,
    path,
    s_minus,
    s_nk,
    star,
    union,
)

from .helpers import graphs


class TestGraphValue:
    def test_rejects_self_loop(self):
        with pytest.raises(ParameterError):
            Graph((0b1,))

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(ParameterError):
            Graph((0b10, 0b00))

    def test_rejects_more_than_64_vertices(self):
        with pytest.raises(CapacityError):
            empty(65)

    def test_edge_count_is_half_degree_sum(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
        assert g.m == sum(g.degrees()) // 2 == 6

    def test_edits_return_new_values(self):
        g = path(4)
        h = g.add_edges([(0, 3)])
        assert g.m == 3 and h.m == 4
        assert h.remove_edges([(0, 3)]) == g

    def test_remove_missing_edge(self):
        with pytest.raises(ParameterError):
            path(3).remove_edges([(0, 2)])

    def test_relabel_moves_vertex_v_to_perm_v(self):
        g = Graph.from_edges(3, [(0, 1)])
        h = g.relabel([2, 0, 1])
        assert h.has_edge(2, 0) and h.m == 1

    def test_adjacency_matrix_symmetric(self):
        a = s_minus(7, 2).adjacency_matrix()
        assert np.array_equal(a, a.T)
        assert a.trace() == 0


class TestFamilies:
    def test_s52(self):
        g = s_nk(5, 2)
        assert (g.n, g.m) == (5, 7)
        assert sorted(g.degrees(), reverse=True) == [4, 4, 2, 2, 2]

    def test_s72_is_the_m11_extremal_graph(self):
        g = build_family(FamilyParams("S_nk", n=7, k=2))
        assert g.m == 11

    def test_s82_minus_one(self):
        g = s_minus(8, 1)
        assert g.m == 12
        ones = [v for v in range(g.n) if g.degree(v) == 1]
        assert ones == [7]
        assert g.neighbors(7) == [0]

    def test_s_minus_deleted_edge_convention(self):
        g = s_minus(6, 2)
        assert not g.has_edge(1, 5) and not g.has_edge(1, 4)
        assert g.has_edge(0, 5) and g.has_edge(1, 3)

    @pytest.mark.parametrize("n", range(3, 20))
    def test_s_minus_edge_formula(self, n):
        for t in range(0, n - 1):
            assert s_minus(n, t).m == 1 + 2 * (n - 2) - t == edge_count_s_minus(n, t)

    @pytest.mark.parametrize("m", range(11, 60))
    def test_every_matching_parity_member_has_m_edges(self, m):
        for t in range(m % 2 == 0, 9, 2):
            n = (m + t + 3) // 2
            assert s_minus(n, t).m == m

    @pytest.mark.parametrize(
        "params",
        [
            FamilyParams("S_nk", n=3, k=3),
            FamilyParams("S_nk", n=3, k=0),
            FamilyParams("S_n2_minus_t", n=5, t=4),
            FamilyParams("S_n2_minus_t", n=5, t=-1),
            FamilyParams("H_t", t=1),
            FamilyParams("S_nk", n=4),
            FamilyParams("union", parts=(FamilyParams("path", n=2),)),
            FamilyParams("wheel", n=5),
        ],
    )
    def test_invalid_parameters(self, params):
        with pytest.raises(ParameterError):
            build_family(params)

    def test_fan_and_gem(self):
        assert (gem().n, gem().m) == (5, 7)
        assert fan(5) == gem()
        assert fan(2).m == 1

    def test_nested_join(self):
        g = build_family(FamilyParams("join", parts=(FamilyParams("complete", n=2), FamilyParams("empty", n=3))))
        assert g == s_nk(5, 2)


class TestJoinUnion:
    def test_gem_is_k1_join_p4(self):
        g = join(complete(1), path(4))
        assert (g.n, g.m) == (5, 7)

    def test_k2_join_3k1(self):
        assert join(complete(2), empty(3)) == s_nk(5, 2)

    def test_k1_join_k1(self):
        assert join(complete(1), complete(1)) == complete(2)

    def test_unions(self):
        assert union(complete(1), complete(1)).m == 0
        g = union(star(2), empty(3))
        assert g.n == 6 and sorted(g.degrees()) == [0, 0, 0, 1, 1, 2]
        h = union(complete(3), complete(3))
        assert (h.n, h.m) == (6, 6) and not is_connected(h)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            join(empty(40), empty(30))
        with pytest.raises(CapacityError):
            union(empty(40), empty(30))

    @given(graphs(max_n=12), graphs(max_n=12))
    def test_edge_count_formulas(self, g, h):
        assert join(g, h).m == g.m + h.m + g.n * h.n
        u = union(g, h)
        assert u.m == g.m + h.m
        assert u.degrees() == g.degrees() + h.degrees()


class TestComponents:
    def test_examples(self):
        assert [len(c) for c in components(union(complete(3), complete(3)))] == [3, 3]
        assert len(components(path(4))) == 1
        assert len(components(s_nk(7, 2))) == 1

    def test_order_by_least_vertex(self):
        g = Graph.from_edges(5, [(1, 4), (0, 3)])
        assert components(g) == [[0, 3], [1, 4], [2]]

    @given(graphs(max_n=12))
    def test_partition(self, g):
        comps = components(g)
        assert sorted(v for c in comps for v in c) == list(range(g.n))
        where = {v: i for i, c in enumerate(comps) for v in c}
        assert all(where[u] == where[v] for u, v in g.edges())

    def test_isolated_free(self):
        assert not is_isolated_free(complete(1))
        assert is_isolated_free(path(2))
        assert not is_isolated_free(union(star(2), empty(3)))

    def test_cycle(self):
        assert cycle(6).degrees() == [2] * 6
