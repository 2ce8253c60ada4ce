"""Shared hypothesis strategies and random-graph helpers."""
import itertools

import numpy as np
from hypothesis import strategies as st

from gemfree.graph import Graph


@st.composite
def graphs(draw, min_n=1, max_n=10):
    """Random simple graphs as bitmask adjacency values."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, picks) if keep])


@st.composite
def connected_graphs(draw, min_n=2, max_n=10):
    """Random connected graphs: a random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges.update(e for e, keep in zip(pairs, picks) if keep)
    return Graph.from_edges(n, edges)


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    upper = rng.random((n, n)) < p
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if upper[i, j]])


def relabel_random(rng: np.random.Generator, g: Graph) -> Graph:
    return g.relabel([int(v) for v in rng.permutation(g.n)])


def five_subset_gem(g: Graph) -> bool:
    """A gem lives on 5 vertices: some vertex of the 5-set is adjacent to the
    other four and those four span a P_4 in some order."""
    for s in itertools.combinations(range(g.n), 5):
        for hub in s:
            rest = [v for v in s if v != hub]
            if not all(g.has_edge(hub, v) for v in rest):
                continue
            for a, b, c, d in itertools.permutations(rest):
                if a < d and g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d):
                    return True
    return False
