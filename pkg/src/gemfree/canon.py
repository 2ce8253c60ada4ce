"""Canonical labelling by partition refinement and backtracking.

The search individualises vertices of the first non-singleton cell of an
equitable ordered partition and keeps the lexicographically largest leaf
certificate.  Two pruning rules keep symmetric graphs tractable:

* a leaf whose certificate equals the first (or best) leaf yields an
  automorphism, and the search jumps back to where the two paths diverge;
* children of a node that lie in one orbit of the automorphisms found so
  far that fix the node's prefix pointwise are explored only once.

A brute-force version over all permutations is kept as an oracle for
small graphs.
"""
from __future__ import annotations

from itertools import permutations
from typing import Sequence

import numpy as np

from .graph import Graph, bits
from .graph6 import to_graph6

BRUTE_FORCE_MAX_N = 8


def _mask(cell: Sequence[int]) -> int:
    out = 0
    for v in cell:
        out |= 1 << v
    return out


def refine(adj: Sequence[int], cells: list[list[int]], splitters: list[int]) -> list[list[int]]:
    """Refine ``cells`` to the coarsest equitable partition finer than it.

    Cells are split by the number of neighbours in each splitter and the
    fragments are ordered by that count, so the result depends only on the
    isomorphism type of (graph, ordered partition, splitter order).
    """
    queue = list(splitters)
    i = 0
    while i < len(queue):
        w = queue[i]
        i += 1
        out = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & w).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(cell)
                continue
            changed = True
            for key in sorted(groups):
                frag = groups[key]
                out.append(frag)
                queue.append(_mask(frag))
        if changed:
            cells = out
        if len(cells) == len(adj):
            break
    return cells


def _certificate(adj: Sequence[int], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(adj)
    for p, v in enumerate(order):
        pos[v] = p
    cert = []
    for v in order:
        out = 0
        for u in bits(adj[v]):
            out |= 1 << pos[u]
        cert.append(out)
    return tuple(cert)


class _Search:
    def __init__(self, adj: Sequence[int]):
        self.adj = adj
        self.n = len(adj)
        self.first_seq: list[int] | None = None
        self.first_order: list[int] = []
        self.first_cert: tuple[int, ...] = ()
        self.best_seq: list[int] = []
        self.best_order: list[int] = []
        self.best_cert: tuple[int, ...] = ()
        self.autos: list[list[int]] = []
        self.leaves = 0

    def _record_auto(self, src: list[int], dst: list[int]) -> None:
        gamma = [0] * self.n
        for a, b in zip(src, dst):
            gamma[a] = b
        if any(gamma[v] != v for v in range(self.n)):
            self.autos.append(gamma)

    def _orbit_roots(self, seq: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.autos:
            if all(gamma[v] == v for v in seq):
                for v in range(self.n):
                    a, b = find(v), find(gamma[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.n)]

    @staticmethod
    def _common_prefix(a: list[int], b: list[int]) -> int:
        k = 0
        for x, y in zip(a, b):
            if x != y:
                break
            k += 1
        return k

    def run(self, cells: list[list[int]], seq: list[int]) -> int:
        """Explore the subtree at ``cells``; return the depth to resume at."""
        depth = len(seq)
        if len(cells) == self.n:
            self.leaves += 1
            order = [c[0] for c in cells]
            cert = _certificate(self.adj, order)
            if self.first_seq is None:
                self.first_seq, self.first_order, self.first_cert = list(seq), order, cert
                self.best_seq, self.best_order, self.best_cert = list(seq), order, cert
                return depth
            if cert == self.first_cert:
                self._record_auto(self.first_order, order)
                return self._common_prefix(seq, self.first_seq)
            if cert == self.best_cert:
                self._record_auto(self.best_order, order)
                return self._common_prefix(seq, self.best_seq)
            if cert > self.best_cert:
                self.best_seq, self.best_order, self.best_cert = list(seq), order, cert
            return depth

        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[idx]
        explored: list[int] = []
        n_autos = -1
        roots: list[int] = []
        for v in target:
            if explored:
                if len(self.autos) != n_autos:
                    n_autos = len(self.autos)
                    roots = self._orbit_roots(seq)
                if any(roots[v] == roots[u] for u in explored):
                    continue
            rest = [u for u in target if u != v]
            child = cells[:idx] + [[v], rest] + cells[idx + 1:]
            child = refine(self.adj, child, [1 << v])
            explored.append(v)
            resume = self.run(child, seq + [v])
            if resume < depth:
                return resume
        return depth - 1


def canonical_labeling(g: Graph, initial: Sequence[Sequence[int]] | None = None) -> tuple[list[int], list[list[int]]]:
    """Return ``(order, automorphisms)``.

    ``order[p]`` is the vertex placed at canonical position ``p``.  With
    ``initial`` (an ordered partition of the vertices) the labelling is
    canonical for the vertex-coloured graph.
    """
    n = g.n
    if n == 0:
        return [], []
    cells = [list(c) for c in initial] if initial is not None else [list(range(n))]
    cells = [c for c in cells if c]
    cells = refine(g.adj, cells, [_mask(c) for c in cells])
    search = _Search(g.adj)
    search.run(cells, [])
    return search.best_order, search.autos


def certificate_of(adj: Sequence[int], initial: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical certificate (relabelled adjacency masks) of a coloured graph."""
    cells = [list(c) for c in initial if c]
    cells = refine(adj, cells, [_mask(c) for c in cells])
    search = _Search(adj)
    search.run(cells, [])
    return search.best_cert


def vertex_certificate(adj: Sequence[int], v: int) -> tuple[int, ...]:
    """Certificate of the graph with ``v`` individualised; equal for two
    vertices iff some automorphism maps one to the other."""
    return certificate_of(adj, [[v], [u for u in range(len(adj)) if u != v]])


def canonical_graph(g: Graph, initial: Sequence[Sequence[int]] | None = None) -> Graph:
    order, _ = canonical_labeling(g, initial)
    perm = [0] * g.n
    for p, v in enumerate(order):
        perm[v] = p
    return g.relabel(perm)


def canonical_form(g: Graph) -> bytes:
    """graph6 string of the canonical relabelling; equal iff isomorphic."""
    return to_graph6(canonical_graph(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)


# brute-force oracle -------------------------------------------------------------

def _all_perms(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


def canonical_form_bruteforce(g: Graph) -> bytes:
    """Maximum graph6 bit string over all n! relabellings (n <= 8)."""
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute-force canonical form limited to n <= {BRUTE_FORCE_MAX_N}")
    if n <= 1:
        return to_graph6(g)
    a = g.adjacency_matrix(dtype=bool)
    perms = _all_perms(n)
    # graph6 bit order: column j, rows i < j
    rows, cols = zip(*[(i, j) for j in range(1, n) for i in range(j)])
    rows, cols = np.array(rows), np.array(cols)
    bits_ = a[perms[:, rows], perms[:, cols]]
    weights = 1 << np.arange(bits_.shape[1] - 1, -1, -1, dtype=np.int64)
    codes = bits_.astype(np.int64) @ weights
    best = perms[int(np.argmax(codes))]
    # best[p] is the vertex at position p
    perm = [0] * n
    for p, v in enumerate(best):
        perm[int(v)] = p
    return to_graph6(g.relabel(perm))


def is_isomorphic_bruteforce(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_form_bruteforce(g) == canonical_form_bruteforce(h)
