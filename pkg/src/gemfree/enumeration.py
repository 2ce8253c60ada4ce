"""Isomorph-free generation of small graphs by vertex addition.

Two generators share the same child expansion (parent on k-1 vertices plus a
new vertex joined to a subset S):

* ``dedupe`` keeps one graph per canonical form in a global set;
* ``augment`` is canonical augmentation: a child is kept only when the new
  vertex lies in the automorphism orbit of the canonically chosen deletion
  vertex (maximum degree, then maximum neighbour-degree profile, then
  maximum individualised certificate).  Only children of the same parent
  need to be compared, so no global set is stored.

Both prune on properties closed under vertex deletion (gem-freeness, an
upper bound on the edge count).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .canon import canonical_form, vertex_certificate
from .errors import CapacityError, ParameterError
from .graph import Graph, bits, is_connected
from .patterns import has_p4_in, hub_has_gem

MAX_ENUM_VERTICES = 10
MAX_ENUM_EDGES = 9
Adj = tuple[int, ...]


@dataclass(frozen=True)
class EnumerationTask:
    mode: str  # "vertices" | "edges"
    size: int
    gem_free: bool = False
    connected: bool = False
    no_isolated: bool = False
    edges: int | None = None
    method: str = "auto"  # "auto" | "dedupe" | "augment"

    def __post_init__(self):
        if self.mode not in ("vertices", "edges"):
            raise ParameterError(f"unknown enumeration mode {self.mode!r}")
        if self.method not in ("auto", "dedupe", "augment"):
            raise ParameterError(f"unknown enumeration method {self.method!r}")
        if self.size < 0:
            raise ParameterError("size must be non-negative")
        if self.mode == "vertices" and self.size > MAX_ENUM_VERTICES:
            raise CapacityError(f"exhaustive enumeration is capped at n <= {MAX_ENUM_VERTICES}")
        if self.mode == "edges" and self.size > MAX_ENUM_EDGES:
            raise CapacityError(f"edge-exhaustive enumeration is capped at m <= {MAX_ENUM_EDGES}")

    @classmethod
    def by_vertices(cls, n: int, **filters) -> "EnumerationTask":
        return cls("vertices", n, **filters)

    @classmethod
    def by_edges(cls, m: int, **filters) -> "EnumerationTask":
        return cls("edges", m, **filters)


# child expansion ----------------------------------------------------------------

def _subsets(parent: Adj, gem_free: bool, max_new: int, min_size: int = 0) -> Iterator[int]:
    """Neighbourhood masks S of the new vertex, in increasing-bit DFS order.

    With ``gem_free`` only S spanning no P_4 are produced (the new vertex
    would otherwise be the hub of a gem); P_4-freeness is hereditary so it
    prunes the DFS.
    """
    k = len(parent)

    def rec(i: int, mask: int, size: int) -> Iterator[int]:
        if i == k:
            if size >= min_size:
                yield mask
            return
        if size + (k - i) < min_size:
            return
        yield from rec(i + 1, mask, size)
        if size < max_new:
            nxt = mask | 1 << i
            if gem_free and size >= 3 and has_p4_in(parent, nxt):
                return
            yield from rec(i + 1, nxt, size + 1)

    yield from rec(0, 0, 0)


def _attach(parent: Adj, s: int) -> Adj:
    k = len(parent)
    return tuple(mask | (1 << k if s >> i & 1 else 0) for i, mask in enumerate(parent)) + (s,)


def _gem_through_new_vertex(child: Adj, s: int) -> bool:
    # hub = new vertex was excluded in _subsets; remaining copies have their hub in S
    return any(hub_has_gem(child, c) for c in bits(s))


def _children(parent: Adj, gem_free: bool, max_edges: int | None, min_degree: int = 0) -> Iterator[tuple[Adj, int]]:
    m = sum(mask.bit_count() for mask in parent) // 2
    max_new = len(parent) if max_edges is None else min(len(parent), max_edges - m)
    if max_new < min_degree:
        return
    for s in _subsets(parent, gem_free, max_new, min_degree):
        child = _attach(parent, s)
        if gem_free and _gem_through_new_vertex(child, s):
            continue
        yield child, s


# canonical augmentation -------------------------------------------------------------

def _profile(adj: Adj, v: int, deg: list[int]) -> tuple[int, ...]:
    return tuple(sorted((deg[u] for u in bits(adj[v])), reverse=True))


def _accept(child: Adj) -> tuple[bool, tuple | None]:
    """Is the new (last) vertex in the orbit of the canonical deletion vertex?

    Returns ``(accepted, key)``; ``key`` identifies the child up to
    isomorphism among children of one parent.
    """
    v = len(child) - 1
    deg = [mask.bit_count() for mask in child]
    top = max(deg)
    if deg[v] != top:
        return False, None
    cands = [u for u in range(len(child)) if deg[u] == top]
    if len(cands) > 1:
        profiles = {u: _profile(child, u, deg) for u in cands}
        best = max(profiles.values())
        if profiles[v] != best:
            return False, None
        cands = [u for u in cands if profiles[u] == best]
    cert_v = vertex_certificate(child, v)
    for u in cands:
        if u != v and vertex_certificate(child, u) > cert_v:
            return False, None
    return True, cert_v


def augment_level(parents: Iterable[Adj], gem_free: bool = False, max_edges: int | None = None) -> Iterator[Adj]:
    """All children of ``parents`` (one per isomorphism class) on one more vertex."""
    for parent in parents:
        seen = set()
        for child, _ in _children(parent, gem_free, max_edges):
            ok, key = _accept(child)
            if ok and key not in seen:
                seen.add(key)
                yield child


def dedupe_level(parents: Iterable[Adj], gem_free: bool = False, max_edges: int | None = None) -> list[Adj]:
    """Same classes as ``augment_level``, found by a global canonical-form set."""
    seen: dict[bytes, Adj] = {}
    for parent in parents:
        for child, _ in _children(parent, gem_free, max_edges):
            key = canonical_form(Graph.unchecked(child))
            if key not in seen:
                seen[key] = child
    return [seen[k] for k in sorted(seen)]


def generate_levels(n: int, gem_free: bool = False, max_edges: int | None = None, method: str = "augment") -> Iterator[tuple[int, list[Adj]]]:
    """Yield ``(k, classes on k vertices)`` for k = 1..n."""
    level: list[Adj] = [(0,)]
    if n >= 1:
        yield 1, level
    for k in range(2, n + 1):
        if method == "dedupe":
            level = dedupe_level(level, gem_free, max_edges)
        else:
            level = list(augment_level(level, gem_free, max_edges))
        yield k, level


def _method_for(task: EnumerationTask, n: int) -> str:
    if task.method != "auto":
        return task.method
    return "dedupe" if n <= 8 else "augment"


def _passes(g: Graph, task: EnumerationTask, m_exact: int | None) -> bool:
    if m_exact is not None and g.m != m_exact:
        return False
    if task.no_isolated and not all(g.adj):
        return False
    if task.connected and not is_connected(g):
        return False
    return True


def enumerate_graphs(task: EnumerationTask) -> Iterator[Graph]:
    """One representative per isomorphism class passing the task's filters.

    ``by_edges(m)`` sweeps n = 1..m+1 and keeps connected graphs with exactly
    m edges, which is complete since a connected graph has n <= m + 1.
    """
    if task.mode == "vertices":
        n, m_exact = task.size, task.edges
        method = _method_for(task, n)
        if n == 0:
            return
        for k, level in generate_levels(n, task.gem_free, m_exact, method):
            if k == n:
                for adj in level:
                    g = Graph.unchecked(adj)
                    if _passes(g, task, m_exact):
                        yield g
        return
    m = task.size
    edge_task = EnumerationTask("vertices", 0, task.gem_free, True, task.no_isolated)
    method = _method_for(task, m + 1)
    for k, level in generate_levels(m + 1, task.gem_free, m, method):
        for adj in level:
            g = Graph.unchecked(adj)
            if _passes(g, edge_task, m):
                yield g


def count_graphs(n: int, **kwargs) -> int:
    return sum(1 for _ in enumerate_graphs(EnumerationTask.by_vertices(n, **kwargs)))


# brute-force oracle --------------------------------------------------------------------

def brute_force_classes(n: int, canon=None) -> set[bytes]:
    """Canonical forms of all 2^(n choose 2) labelled graphs on n vertices."""
    from .canon import canonical_form_bruteforce

    canon = canon or canonical_form_bruteforce
    pairs = [(i, j) for j in range(n) for i in range(j)]
    out = set()
    for code in range(1 << len(pairs)):
        g = Graph.from_edges(n, (pairs[b] for b in range(len(pairs)) if code >> b & 1))
        out.add(canon(g))
    return out
