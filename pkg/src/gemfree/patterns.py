"""Subgraph containment (not induced) for the gem, fans H_t and small explicit patterns."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CapacityError, ParameterError
from .graph import Graph, bits, fan

ORACLE_MAX_PATTERN = 8
ORACLE_MAX_HOST = 16


@dataclass(frozen=True)
class PatternSpec:
    kind: str  # "gem" | "fan" | "explicit"
    t: int | None = None
    graph: Graph | None = None

    def __post_init__(self):
        if self.kind == "fan" and (self.t is None or self.t < 2):
            raise ParameterError("fan pattern needs t >= 2")
        if self.kind == "explicit" and self.graph is None:
            raise ParameterError("explicit pattern needs a graph")
        if self.kind not in ("gem", "fan", "explicit"):
            raise ParameterError(f"unknown pattern kind {self.kind!r}")

    @classmethod
    def gem(cls) -> "PatternSpec":
        return cls("gem")

    @classmethod
    def fan(cls, t: int) -> "PatternSpec":
        return cls("fan", t=t)

    @classmethod
    def explicit(cls, g: Graph) -> "PatternSpec":
        return cls("explicit", graph=g)

    @property
    def fan_order(self) -> int | None:
        """t if the pattern is the fan H_t, else None."""
        if self.kind == "gem":
            return 5
        if self.kind == "fan":
            return self.t
        return None

    def to_graph(self) -> Graph:
        if self.kind == "explicit":
            return self.graph
        return fan(self.fan_order)


def has_path_in(adj: Sequence[int], allowed: int, k: int) -> bool:
    """True iff the subgraph induced on bitmask ``allowed`` contains a path on k vertices."""
    if k <= 0:
        return True
    if allowed.bit_count() < k:
        return False

    def extend(cur: int, visited: int, length: int) -> bool:
        if length == k:
            return True
        for nxt in bits(adj[cur] & allowed & ~visited):
            if extend(nxt, visited | 1 << nxt, length + 1):
                return True
        return False

    return any(extend(s, 1 << s, 1) for s in bits(allowed))


def has_p4_in(adj: Sequence[int], allowed: int) -> bool:
    """Closed-form P_4 test on the subgraph induced by ``allowed``.

    A path a-b-c-d exists iff some edge bc has a further neighbour on each
    side that are distinct; the only way to fail with both sides non-empty
    is a triangle.
    """
    rest = allowed
    while rest:
        low = rest & -rest
        b = low.bit_length() - 1
        rest ^= low
        nb = adj[b] & allowed
        if nb.bit_count() < 2:
            continue
        cs = nb & rest
        while cs:
            lc = cs & -cs
            c = lc.bit_length() - 1
            cs ^= lc
            side_b = nb & ~lc
            side_c = adj[c] & allowed & ~low
            if side_c and (side_b | side_c).bit_count() >= 2:
                return True
    return False


def hub_has_gem(adj: Sequence[int], v: int) -> bool:
    nb = adj[v]
    return nb.bit_count() >= 4 and has_p4_in(adj, nb)


def hub_has_fan(adj: Sequence[int], v: int, t: int) -> bool:
    """True iff ``v`` is the hub of some H_t, i.e. N(v) spans a path on t-1 vertices."""
    nb = adj[v]
    return nb.bit_count() >= t - 1 and has_path_in(adj, nb, t - 1)


def _contains_fan(adj: Sequence[int], t: int) -> bool:
    return any(hub_has_fan(adj, v, t) for v in range(len(adj)))


def _contains_explicit(adj: Sequence[int], pat: Graph) -> bool:
    k = pat.n
    if k > len(adj):
        return False
    if pat.m == 0:
        return True
    n = len(adj)
    pdeg = pat.degrees()
    gdeg = [mask.bit_count() for mask in adj]
    # map high-degree pattern vertices first, keeping each new vertex attached if possible
    order: list[int] = []
    left = set(range(k))
    while left:
        placed = set(order)
        best = max(left, key=lambda u: (sum(1 for w in bits(pat.adj[u]) if w in placed), pdeg[u], -u))
        order.append(best)
        left.remove(best)
    image = [0] * k

    def place(i: int, used: int) -> bool:
        if i == k:
            return True
        u = order[i]
        cand = (1 << n) - 1 & ~used
        for j in range(i):
            if pat.adj[u] >> order[j] & 1:
                cand &= adj[image[order[j]]]
        for x in bits(cand):
            if gdeg[x] < pdeg[u]:
                continue
            image[u] = x
            if place(i + 1, used | 1 << x):
                return True
        return False

    return place(0, 0)


def contains_subgraph(g: Graph, p: PatternSpec) -> bool:
    t = p.fan_order
    if t is not None:
        return _contains_fan(g.adj, t)
    return _contains_explicit(g.adj, p.graph)


def is_gem_free(g: Graph) -> bool:
    return not _contains_fan(g.adj, 5)


def is_fan_free(g: Graph, t: int) -> bool:
    return not _contains_fan(g.adj, t)


def edge_creates_fan(adj: Sequence[int], p: int, q: int, t: int = 5) -> bool:
    """Whether a graph with edge pq (already present in ``adj``) has an H_t using that edge.

    Any new copy contains p and q, so its hub is p, q or a common neighbour.
    """
    hubs = adj[p] & adj[q] | (1 << p) | (1 << q)
    if t == 5:
        return any(hub_has_gem(adj, c) for c in bits(hubs))
    return any(hub_has_fan(adj, c, t) for c in bits(hubs))


def oracle_contains(g: Graph, p: PatternSpec) -> bool:
    """Exhaustive search over injective maps pattern -> host.

    Maps are extended one pattern vertex at a time in label order and a
    partial map is dropped as soon as one of its pattern edges is missing.
    """
    pat = p.to_graph()
    if pat.n > ORACLE_MAX_PATTERN or g.n > ORACLE_MAX_HOST:
        raise CapacityError(
            f"oracle limited to patterns of <= {ORACLE_MAX_PATTERN} and hosts of <= {ORACLE_MAX_HOST} vertices"
        )
    k, n = pat.n, g.n
    if k > n:
        return False
    back = [[j for j in range(i) if pat.has_edge(i, j)] for i in range(k)]
    image: list[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == k:
            return True
        for x in range(n):
            if used[x]:
                continue
            if all(g.has_edge(x, image[j]) for j in back[i]):
                used[x] = True
                image.append(x)
                if extend(i + 1):
                    return True
                image.pop()
                used[x] = False
        return False

    return extend(0)
