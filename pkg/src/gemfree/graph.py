"""Immutable simple graphs on at most 64 vertices.

Each vertex's neighbourhood is stored as an int bitmask, so degree and
common-neighbour queries are single popcounts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, ParameterError

MAX_VERTICES = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask.  Instances are
    immutable; every edit returns a new graph.
    """

    adj: tuple[int, ...]
    _m: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.adj)
        if n > MAX_VERTICES:
            raise CapacityError(f"graph has {n} vertices, cap is {MAX_VERTICES}")
        full = (1 << n) - 1
        total = 0
        for v, mask in enumerate(self.adj):
            if mask & ~full or mask >> v & 1:
                raise ParameterError(f"vertex {v}: neighbour out of range or self-loop")
            for u in bits(mask):
                if not self.adj[u] >> v & 1:
                    raise ParameterError(f"adjacency not symmetric at ({v}, {u})")
            total += mask.bit_count()
        object.__setattr__(self, "_m", total // 2)

    @classmethod
    def unchecked(cls, adj: tuple[int, ...]) -> "Graph":
        """Build without validation; for hot loops that maintain symmetry themselves."""
        g = object.__new__(cls)
        object.__setattr__(g, "adj", adj)
        object.__setattr__(g, "_m", sum(mask.bit_count() for mask in adj) // 2)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n > MAX_VERTICES:
            raise CapacityError(f"graph has {n} vertices, cap is {MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParameterError(f"invalid edge ({u}, {v}) for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(tuple(adj))

    @classmethod
    def from_matrix(cls, a) -> "Graph":
        a = np.asarray(a)
        n = a.shape[0]
        return cls.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if a[i, j]))

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def m(self) -> int:
        return self._m

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [mask.bit_count() for mask in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    # edits -----------------------------------------------------------------

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = list(self.adj)
        for u, v in edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ParameterError(f"invalid edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(tuple(adj))

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = list(self.adj)
        for u, v in edges:
            if not adj[u] >> v & 1:
                raise ParameterError(f"({u}, {v}) is not an edge")
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(tuple(adj))

    def add_vertices(self, k: int) -> "Graph":
        if self.n + k > MAX_VERTICES:
            raise CapacityError(f"{self.n + k} vertices exceeds cap {MAX_VERTICES}")
        return Graph(self.adj + (0,) * k)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, vertices relabelled in the order given."""
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in combinations(vertices, 2) if self.adj[u] >> v & 1),
        )

    def delete_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.induced([v for v in range(self.n) if v not in drop])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph in which vertex ``v`` is renamed ``perm[v]``."""
        adj = [0] * self.n
        for v, mask in enumerate(self.adj):
            out = 0
            for u in bits(mask):
                out |= 1 << perm[u]
            adj[perm[v]] = out
        return Graph(tuple(adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, edges={self.edges()})"


# standard constructors ------------------------------------------------------

def empty(n: int) -> Graph:
    return Graph((0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(tuple(full & ~(1 << v) for v in range(n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(a: int) -> Graph:
    """K_{1,a} with centre 0."""
    return Graph.from_edges(a + 1, ((0, i) for i in range(1, a + 1)))


def union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; ``h`` is shifted to vertices ``g.n..``."""
    if g.n + h.n > MAX_VERTICES:
        raise CapacityError(f"union has {g.n + h.n} vertices, cap is {MAX_VERTICES}")
    return Graph(g.adj + tuple(mask << g.n for mask in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between ``g`` and ``h``."""
    if g.n + h.n > MAX_VERTICES:
        raise CapacityError(f"join has {g.n + h.n} vertices, cap is {MAX_VERTICES}")
    g_all = (1 << g.n) - 1
    h_all = ((1 << h.n) - 1) << g.n
    return Graph(tuple(mask | h_all for mask in g.adj) + tuple((mask << g.n) | g_all for mask in h.adj))


def s_nk(n: int, k: int) -> Graph:
    """S_{n,k} = K_k joined to n-k isolated vertices; vertices 0..k-1 form the clique."""
    if not 1 <= k < n:
        raise ParameterError(f"S_(n,k) needs 1 <= k < n, got n={n}, k={k}")
    return join(complete(k), empty(n - k))


def s_minus(n: int, t: int) -> Graph:
    """S_{n,2}^{-t}: S_{n,2} without the edges {1, n-1-i}, i < t.

    Vertices 0 and 1 form the K_2, 2..n-1 the independent set.
    """
    if n < 3 or not 0 <= t <= n - 2:
        raise ParameterError(f"S_(n,2)^-t needs n >= 3 and 0 <= t <= n-2, got n={n}, t={t}")
    return s_nk(n, 2).remove_edges((1, n - 1 - i) for i in range(t))


def fan(t: int) -> Graph:
    """H_t = K_1 joined to P_{t-1}; vertex 0 is the hub, 1..t-1 the path."""
    if t < 2:
        raise ParameterError(f"H_t needs t >= 2, got {t}")
    return join(complete(1), path(t - 1))


def gem() -> Graph:
    return fan(5)


FAMILY_TAGS = ("S_nk", "S_n2_minus_t", "H_t", "path", "cycle", "complete", "star", "empty", "union", "join")


@dataclass(frozen=True)
class FamilyParams:
    """A named graph family and its integer parameters.

    ``union`` and ``join`` take two nested ``FamilyParams`` in ``parts``.
    """

    tag: str
    n: int | None = None
    k: int | None = None
    t: int | None = None
    parts: tuple["FamilyParams", ...] = ()


def _need(value: int | None, name: str, tag: str) -> int:
    if value is None:
        raise ParameterError(f"family {tag} needs parameter {name}")
    return value


def build_family(params: FamilyParams) -> Graph:
    tag = params.tag
    if tag == "S_nk":
        return s_nk(_need(params.n, "n", tag), _need(params.k, "k", tag))
    if tag == "S_n2_minus_t":
        return s_minus(_need(params.n, "n", tag), _need(params.t, "t", tag))
    if tag == "H_t":
        return fan(_need(params.t, "t", tag))
    if tag in ("path", "complete", "empty", "cycle"):
        n = _need(params.n, "n", tag)
        if n < 1:
            raise ParameterError(f"{tag} needs n >= 1")
        return {"path": path, "complete": complete, "empty": empty, "cycle": cycle}[tag](n)
    if tag == "star":
        a = _need(params.n, "n", tag)
        if a < 0:
            raise ParameterError("star needs n >= 0 leaves")
        return star(a)
    if tag in ("union", "join"):
        if len(params.parts) != 2:
            raise ParameterError(f"{tag} needs exactly two parts")
        left, right = (build_family(p) for p in params.parts)
        return union(left, right) if tag == "union" else join(left, right)
    raise ParameterError(f"unknown family tag {tag!r}")


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by least vertex."""
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(list(bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def is_isolated_free(g: Graph) -> bool:
    return all(g.adj)


def edge_count_s_minus(n: int, t: int) -> int:
    return 1 + 2 * (n - 2) - t
