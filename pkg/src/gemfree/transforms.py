"""Spectral-radius-increasing graph operations.

* ``rotate``: move edges v-v_i over to u (increases rho when x_u >= x_v);
* ``w_eliminate``: replace every vertex outside the closed neighbourhood of
  u* by fresh vertices hung on u* and the star centre, landing on an
  S_{n,2}^{-t} with the same number of edges;
* ``cross_gap``: y^T (A' - A) z over the symmetric difference of edge sets;
* ``compare_families``: the ordering of rho(S_{(m+t+3)/2,2}^{-t}) in t.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError, StructuralError
from .graph import MAX_VERTICES, Graph, bits, is_connected, s_minus
from .spectral import DEFAULT_TOL, batch_spectral_radius, perron


@dataclass(frozen=True)
class RotationSpec:
    u: int
    v: int
    moved: frozenset[int]

    def __init__(self, u: int, v: int, moved: Iterable[int]):
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "moved", frozenset(moved))

    def validate(self, g: Graph) -> None:
        u, v = self.u, self.v
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise ParameterError(f"rotation endpoints ({u}, {v}) out of range")
        if u == v:
            raise ParameterError("rotation needs u != v")
        if not self.moved:
            raise ParameterError("rotation needs at least one moved neighbour")
        for w in self.moved:
            if w == u:
                raise ParameterError(f"moved vertex {w} equals u")
            if not g.has_edge(v, w):
                raise ParameterError(f"moved vertex {w} is not a neighbour of v={v}")
            if g.has_edge(u, w):
                raise ParameterError(f"moved vertex {w} is already adjacent to u={u}")


def rotate(g: Graph, spec: RotationSpec) -> Graph:
    spec.validate(g)
    adj = list(g.adj)
    for w in spec.moved:
        adj[spec.v] &= ~(1 << w)
        adj[w] &= ~(1 << spec.v)
        adj[spec.u] |= 1 << w
        adj[w] |= 1 << spec.u
    return Graph(tuple(adj))


@dataclass(frozen=True)
class RotationReport:
    status: str  # "confirmed" | "violated" | "hypothesis-not-satisfied"
    rho_before: float
    rho_after: float
    x_u: float
    x_v: float

    @property
    def margin(self) -> float:
        return self.rho_after - self.rho_before

    @property
    def ok(self) -> bool:
        return self.status != "violated"


def check_rotation_lemma(g: Graph, spec: RotationSpec, tol: float = DEFAULT_TOL) -> RotationReport:
    """Check rho(rotate(g)) > rho(g) whenever x_u >= x_v - tol."""
    if not is_connected(g):
        raise StructuralError("rotation check needs a connected graph")
    g2 = rotate(g, spec)
    before = perron(g, tol=tol)
    after = perron(g2, tol=tol)
    x_u, x_v = float(before.x[spec.u]), float(before.x[spec.v])
    if x_u < x_v - tol:
        status = "hypothesis-not-satisfied"
    elif after.rho > before.rho:
        status = "confirmed"
    else:
        status = "violated"
    return RotationReport(status, before.rho, after.rho, x_u, x_v)


# W-elimination surgery -------------------------------------------------------------

@dataclass(frozen=True)
class SurgeryPlan:
    """Decomposition of a graph around u*.

    U = N(u*) induces a star (centre ``center``, ``leaves``) plus the
    ``isolated`` vertices; every w in ``W`` has N(w) inside ``leaves``,
    at least two neighbours, and W is independent.
    """

    u_star: int
    center: int
    leaves: tuple[int, ...]
    isolated: tuple[int, ...]
    W: tuple[int, ...]
    degrees: tuple[int, ...]

    @property
    def added_counts(self) -> tuple[int, ...]:
        """Fresh vertices per w_i: d/2 for even d, (d-1)/2 + 1 for odd d."""
        return tuple(d // 2 if d % 2 == 0 else (d - 1) // 2 + 1 for d in self.degrees)

    @property
    def realized_t(self) -> int:
        return len(self.isolated) + sum(d % 2 for d in self.degrees)

    @property
    def realized_n(self) -> int:
        return 2 + len(self.leaves) + len(self.isolated) + sum(self.added_counts)


def _decompose(g: Graph, u_star: int, center: int | None) -> SurgeryPlan:
    U_mask = g.adj[u_star]
    if not U_mask:
        raise StructuralError("u* has no neighbours")
    U = list(bits(U_mask))
    inner = {u: g.adj[u] & U_mask for u in U}
    nontrivial = [u for u in U if inner[u]]
    if not nontrivial:
        raise StructuralError("G[U] has no edges: it is not K_{1,a} + bK_1 with a >= 1")
    # the non-isolated part of G[U] must be a single star
    nt_mask = 0
    for u in nontrivial:
        nt_mask |= 1 << u
    centers = [u for u in nontrivial if inner[u] == nt_mask & ~(1 << u)]
    e_inner = sum(inner[u].bit_count() for u in nontrivial) // 2
    if not centers or e_inner != len(nontrivial) - 1:
        raise StructuralError("G[U] is not K_{1,a} + bK_1 with a >= 1")
    if center is None:
        options = centers
    elif center in centers:
        options = [center]
    else:
        raise StructuralError(f"vertex {center} is not a centre of the star in G[U]")
    isolated = tuple(u for u in U if not inner[u])
    W = [w for w in range(g.n) if w != u_star and not U_mask >> w & 1]
    W_mask = 0
    for w in W:
        W_mask |= 1 << w
    for w in W:
        if g.adj[w] & W_mask:
            raise StructuralError("e(W) != 0")
    last_error = None
    for c in options:
        leaves = tuple(u for u in nontrivial if u != c)
        leaf_mask = nt_mask & ~(1 << c)
        try:
            for w in W:
                if g.adj[w] & ~leaf_mask:
                    raise StructuralError(f"N(w={w}) is not contained in the star leaves")
                if g.adj[w].bit_count() < 2:
                    raise StructuralError(f"w={w} has degree < 2")
        except StructuralError as exc:
            last_error = exc
            continue
        return SurgeryPlan(
            u_star=u_star,
            center=c,
            leaves=leaves,
            isolated=isolated,
            W=tuple(W),
            degrees=tuple(g.adj[w].bit_count() for w in W),
        )
    raise last_error


def plan_surgery(g: Graph, u_star: int | None = None, center: int | None = None) -> SurgeryPlan:
    """Compute the decomposition; u* defaults to the Perron argmax."""
    if u_star is None:
        u_star = perron(g).u_star
    return _decompose(g, u_star, center)


@dataclass(frozen=True)
class SurgeryStages:
    """Intermediate graphs: G_c (G plus fresh isolated vertices), G_c' (edges
    moved, W isolated) and the final graph with W deleted."""

    plan: SurgeryPlan
    g_c: Graph
    g_c_prime: Graph
    result: Graph
    fresh: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def t(self) -> int:
        return self.plan.realized_t


def surgery_stages(g: Graph, plan: SurgeryPlan) -> SurgeryStages:
    recomputed = _decompose(g, plan.u_star, plan.center)
    for name in ("leaves", "isolated", "W", "degrees"):
        if getattr(recomputed, name) != getattr(plan, name):
            raise StructuralError(f"plan field {name!r} does not match the graph's decomposition")
    # step 1: fresh isolated vertices k_0 (odd d only), k_1..k_{floor(d/2)}
    g_c = g.add_vertices(sum(plan.added_counts))
    fresh = []
    nxt = g.n
    for cnt in plan.added_counts:
        fresh.append(tuple(range(nxt, nxt + cnt)))
        nxt += cnt
    # step 2: detach each w and hang its replacements on u* (and the centre)
    adj = list(g_c.adj)
    u, v = plan.u_star, plan.center
    for w, d, ks in zip(plan.W, plan.degrees, fresh):
        for vj in bits(adj[w]):
            adj[vj] &= ~(1 << w)
        adj[w] = 0
        if d % 2:
            k0, paired = ks[0], ks[1:]
            adj[u] |= 1 << k0
            adj[k0] |= 1 << u
        else:
            paired = ks
        for k in paired:
            adj[k] |= 1 << u | 1 << v
            adj[u] |= 1 << k
            adj[v] |= 1 << k
    g_c_prime = Graph(tuple(adj))
    result = g_c_prime.delete_vertices(plan.W)
    return SurgeryStages(plan, g_c, g_c_prime, result, tuple(fresh))


def w_eliminate(g: Graph, plan: SurgeryPlan) -> Graph:
    """Apply the W-elimination surgery; the result is isomorphic to
    S_{n,2}^{-t} with t = plan.realized_t and has g.m edges."""
    return surgery_stages(g, plan).result


def surgery_family_member(plan: SurgeryPlan) -> Graph:
    return s_minus(plan.realized_n, plan.realized_t)


def cross_gap(before: Graph, after: Graph, y: Sequence[float], z: Sequence[float]) -> float:
    """y^T (A(after) - A(before)) z, summed over edges that differ."""
    if before.n != after.n:
        raise ParameterError(f"vertex sets differ: {before.n} vs {after.n}")
    if len(y) != before.n or len(z) != before.n:
        raise ParameterError("vectors must have one entry per vertex")
    total = 0.0
    for p in range(before.n):
        diff = before.adj[p] ^ after.adj[p]
        for q in bits(diff >> (p + 1) << (p + 1)):
            term = y[p] * z[q] + y[q] * z[p]
            total += term if after.adj[p] >> q & 1 else -term
    return float(total)


# family ordering ---------------------------------------------------------------

@dataclass(frozen=True)
class FamilyComparison:
    m: int
    reference_t: int
    reference_rho: float
    rows: tuple[tuple[int, int, float], ...]  # (t, n, rho), decreasing rho

    @property
    def margins(self) -> dict[int, float]:
        return {t: self.reference_rho - rho for t, _, rho in self.rows if t != self.reference_t}

    @property
    def min_margin(self) -> float:
        return min(self.margins.values(), default=float("inf"))

    def holds(self, margin: float = 0.0) -> bool:
        return self.min_margin > margin


def family_member(m: int, t: int) -> Graph:
    """S_{(m+t+3)/2,2}^{-t}, the member with exactly m edges."""
    if (m + t + 3) % 2:
        raise ParameterError(f"t={t} has the wrong parity for m={m}")
    return s_minus((m + t + 3) // 2, t)


def s_minus_matrix(n: int, t: int) -> np.ndarray:
    """Dense adjacency of S_{n,2}^{-t} in the labelling of ``s_minus``; no vertex cap."""
    if not 0 <= t <= n - 2:
        raise ParameterError(f"need 0 <= t <= n-2, got n={n}, t={t}")
    a = np.zeros((n, n))
    a[0, 1:] = a[1:, 0] = 1.0
    a[1, 2:] = a[2:, 1] = 1.0
    for i in range(t):
        a[1, n - 1 - i] = a[n - 1 - i, 1] = 0.0
    return a


def _s_minus_rho(n: int, t: int, tol: float) -> float:
    # members with m close to 120 and larger t need up to 66 vertices
    if n <= MAX_VERTICES:
        return perron(s_minus(n, t), tol=tol).rho
    return float(batch_spectral_radius(s_minus_matrix(n, t)[None], tol=tol)[0])


def compare_families(m: int, t_max: int, ts: Iterable[int] | None = None, tol: float = DEFAULT_TOL) -> FamilyComparison:
    """Radii of S_{(m+t+3)/2,2}^{-t} against the t=0 (odd m) or t=1 (even m) member."""
    if m <= t_max + 1:
        raise ParameterError(f"need m > t_max + 1, got m={m}, t_max={t_max}")
    ref_t = 0 if m % 2 else 1
    if ts is None:
        ts = range(ref_t + 2, t_max + 1, 2)
    ts = list(ts)
    for t in ts:
        if (m + t + 3) % 2:
            raise ParameterError(f"t={t} has the wrong parity for m={m}")
        if t > t_max or t < 0:
            raise ParameterError(f"t={t} outside 0..{t_max}")
    rows = []
    for t in sorted(set(ts) | {ref_t}):
        n = (m + t + 3) // 2
        rows.append((t, n, _s_minus_rho(n, t, tol)))
    ref_rho = next(rho for t, _, rho in rows if t == ref_t)
    rows.sort(key=lambda r: (-r[2], r[0]))
    return FamilyComparison(m, ref_t, ref_rho, tuple(rows))


def zero_extend(x: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n)
    out[: len(x)] = x
    return out
