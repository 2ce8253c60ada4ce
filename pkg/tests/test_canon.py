import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from gemfree.canon import (
    canonical_form,
    canonical_form_bruteforce,
    canonical_graph,
    canonical_labeling,
    is_isomorphic,
    is_isomorphic_bruteforce,
    vertex_certificate,
)
from gemfree.graph import Graph, complete, cycle, empty, join, path, s_minus, s_nk, star, union

from .helpers import graphs, random_graph, relabel_random


def test_p4_relabelings_agree():
    a = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    b = Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)])
    assert canonical_form(a) == canonical_form(b)
    assert is_isomorphic(a, b)


def test_p4_vs_claw():
    assert canonical_form(path(4)) != canonical_form(star(3))
    assert not is_isomorphic(path(4), star(3))


def test_s62_minus_two_against_explicit_deletion():
    explicit = join(complete(2), empty(4)).remove_edges([(1, 4), (1, 5)])
    assert canonical_form(s_minus(6, 2)) == canonical_form(explicit)
    assert canonical_form_bruteforce(s_minus(6, 2)) == canonical_form_bruteforce(explicit)
    assert is_isomorphic(s_minus(6, 2), explicit)


def test_bruteforce_cap():
    with pytest.raises(ValueError):
        canonical_form_bruteforce(empty(9))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7))
def test_isomorphism_agrees_with_bruteforce(g):
    rng = np.random.default_rng(g.m * 31 + g.n)
    h = relabel_random(rng, g)
    other = random_graph(rng, g.n, 0.5)
    assert is_isomorphic(g, h) and is_isomorphic_bruteforce(g, h)
    assert is_isomorphic(g, other) == is_isomorphic_bruteforce(g, other)


@pytest.mark.parametrize("n", range(1, 6))
def test_class_count_matches_bruteforce(n):
    pairs = list(itertools.combinations(range(n), 2))
    refined, brute = set(), set()
    for code in range(1 << len(pairs)):
        g = Graph.from_edges(n, (pairs[b] for b in range(len(pairs)) if code >> b & 1))
        refined.add(canonical_form(g))
        brute.add(canonical_form_bruteforce(g))
    assert len(refined) == len(brute) == [1, 2, 4, 11, 34][n - 1]


FIXTURES = [
    s_nk(7, 2),
    s_minus(12, 3),
    s_minus(30, 1),
    cycle(9),
    union(complete(4), cycle(5)),
    join(path(4), empty(6)),
    empty(12),
    complete(10),
]


@pytest.mark.parametrize("g", FIXTURES, ids=lambda g: f"n{g.n}m{g.m}")
def test_invariant_under_1000_relabelings(g, rng):
    form = canonical_form(g)
    for _ in range(1000):
        assert canonical_form(relabel_random(rng, g)) == form


@pytest.mark.parametrize("n,p", [(12, 0.3), (20, 0.2), (35, 0.1), (64, 0.05)])
def test_random_relabelings_large(n, p, rng):
    g = random_graph(rng, n, p)
    form = canonical_form(g)
    for _ in range(25):
        assert canonical_form(relabel_random(rng, g)) == form


def test_canonical_graph_is_isomorphic_relabelling():
    g = s_minus(9, 2)
    c = canonical_graph(g)
    assert sorted(c.degrees()) == sorted(g.degrees())
    assert canonical_form(c) == canonical_form(g)


def test_automorphisms_are_automorphisms():
    g = s_minus(10, 3)
    _, autos = canonical_labeling(g)
    assert autos
    for gamma in autos:
        assert g.relabel(gamma) == g


def test_vertex_certificate_detects_orbits():
    g = s_nk(6, 2)
    assert vertex_certificate(g.adj, 0) == vertex_certificate(g.adj, 1)
    assert vertex_certificate(g.adj, 2) == vertex_certificate(g.adj, 5)
    assert vertex_certificate(g.adj, 0) != vertex_certificate(g.adj, 2)


def test_regular_graphs_distinguished():
    # two 3-regular graphs on 6 vertices: K_{3,3} and the prism
    k33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
    prism = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    assert not is_isomorphic(k33, prism)
    assert is_isomorphic_bruteforce(k33, prism) is False
