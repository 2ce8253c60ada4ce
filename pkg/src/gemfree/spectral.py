"""Perron root/vector by power iteration, the closed-form bounds, rho*(m), and
eigenvector certificates (the u*/U/W partition and the eta_1 ledger).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ConvergenceError, ParameterError, StructuralError
from .graph import Graph, bits, components

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200_000
TIE_TOL = 1e-12


@dataclass(frozen=True)
class PerronResult:
    rho: float
    x: np.ndarray = field(repr=False)
    iterations: int
    residual: float

    @property
    def u_star(self) -> int:
        """Least index whose coordinate is within TIE_TOL of the maximum."""
        return int(np.flatnonzero(self.x >= self.x.max() - TIE_TOL)[0])


def _power_component(a: np.ndarray, tol: float, max_iter: int, x0: np.ndarray | None = None):
    """Power iteration on A + I for one connected block.

    The shift makes the iteration matrix primitive, so bipartite blocks
    converge too; the eigenvalue is recovered by subtracting 1.
    """
    k = a.shape[0]
    if k == 1:
        return 0.0, np.ones(1), 0, 0.0
    b = a + np.eye(k)
    x = np.ones(k) if x0 is None else np.array(x0, dtype=float)
    x /= x.max()
    residual = math.inf
    for it in range(1, max_iter + 1):
        y = b @ x
        x = y / y.max()
        ax = a @ x
        rho = float(x @ ax) / float(x @ x)
        residual = float(np.max(np.abs(ax - rho * x)))
        if residual <= tol:
            return rho, x, it, residual
    raise ConvergenceError("power iteration did not converge", residual, max_iter)


def perron(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> PerronResult:
    """Spectral radius and Perron vector (max coordinate exactly 1).

    Each component is iterated separately from the all-ones vector; the
    returned vector lives on the component with the largest root (least
    vertex on ties) and is zero elsewhere.
    """
    if g.n < 1:
        raise ParameterError("perron needs at least one vertex")
    a = g.adjacency_matrix()
    best = None
    total_iter = 0
    for comp in components(g):
        rho, xc, it, _ = _power_component(a[np.ix_(comp, comp)], tol, max_iter)
        total_iter += it
        if best is None or rho > best[0] + TIE_TOL:
            best = (rho, comp, xc)
    rho, comp, xc = best
    x = np.zeros(g.n)
    x[comp] = xc
    top = int(np.argmax(x))
    x /= x[top]
    x[top] = 1.0
    residual = float(np.max(np.abs(a @ x - rho * x)))
    return PerronResult(rho=rho, x=x, iterations=total_iter, residual=residual)


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL) -> float:
    return perron(g, tol=tol).rho


# closed forms ------------------------------------------------------------------

def bound_odd(m: int) -> float:
    """(1 + sqrt(4m - 3)) / 2, the spectral radius of K_2 v ((m-1)/2)K_1."""
    if m < 1:
        raise ParameterError("m must be >= 1")
    return (1 + math.sqrt(4 * m - 3)) / 2


def threshold_lower(m: int) -> float:
    """(1 + sqrt(4m - 5)) / 2, strictly below rho*(m)."""
    if m < 2:
        raise ParameterError("m must be >= 2")
    return (1 + math.sqrt(4 * m - 5)) / 2


def rho_star_poly(m: int, x: float) -> float:
    return x**4 - m * x**2 - (m - 2) * x + (m / 2 - 1)


def rho_star(m: int, tol: float = DEFAULT_TOL) -> float:
    """Largest real root of x^4 - m x^2 - (m-2) x + (m/2 - 1).

    Bracketed in (threshold_lower(m), (1 + sqrt(4m+1))/2), bisected to
    1e-6, then polished with Newton steps kept inside the bracket.
    """
    if m < 4 or m % 2:
        raise ParameterError(f"rho_star needs even m >= 4, got {m}")
    lo, hi = threshold_lower(m), (1 + math.sqrt(4 * m + 1)) / 2
    f_lo, f_hi = rho_star_poly(m, lo), rho_star_poly(m, hi)
    if not (f_lo < 0 < f_hi):
        raise RuntimeError(f"rho_star bracket has no sign change for m={m}: f({lo})={f_lo}, f({hi})={f_hi}")
    while hi - lo > 1e-6:
        mid = (lo + hi) / 2
        if rho_star_poly(m, mid) < 0:
            lo = mid
        else:
            hi = mid
    x = (lo + hi) / 2
    for _ in range(50):
        fx = rho_star_poly(m, x)
        if abs(fx) <= tol * m * m:
            break
        dfx = 4 * x**3 - 2 * m * x - (m - 2)
        nxt = x - fx / dfx
        if not lo <= nxt <= hi:
            nxt = (lo + hi) / 2
        if rho_star_poly(m, nxt) < 0:
            lo = max(lo, nxt)
        else:
            hi = min(hi, nxt)
        if nxt == x:
            break
        x = nxt
    return x


def parity_bound(m: int) -> float:
    """bound_odd(m) for odd m, rho_star(m) for even m."""
    return bound_odd(m) if m % 2 else rho_star(m)


# certificates ------------------------------------------------------------------

def _mask(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def eta1(vertices: Iterable[int], g: Graph, x: Sequence[float]) -> float:
    """sum_{u in V} (d_V(u) - 1) x_u - e(V); zero for the empty set."""
    vs = list(vertices)
    if not vs:
        return 0.0
    mask = _mask(vs)
    degs = [(g.adj[u] & mask).bit_count() for u in vs]
    return float(sum((d - 1) * x[u] for u, d in zip(vs, degs)) - sum(degs) / 2)


def classify_component(g: Graph, comp: Sequence[int]) -> str:
    """H1 for K_3, H2 for a star K_{1,a} (a >= 1), H3 for K_1, otherwise 'other'."""
    k = len(comp)
    if k == 1:
        return "H3"
    mask = _mask(comp)
    degs = sorted((g.adj[u] & mask).bit_count() for u in comp)
    edges = sum(degs) // 2
    if k == 3 and edges == 3:
        return "H1"
    if edges == k - 1 and degs[-1] == k - 1:
        return "H2"
    return "other"


@dataclass(frozen=True)
class SpectralCertificate:
    u_star: int
    U: tuple[int, ...]
    W: tuple[int, ...]
    eta1_U: float
    eta1_per_component: tuple[float, ...]
    components_U: tuple[tuple[int, ...], ...]
    component_classes: tuple[str, ...]
    eU: int
    eW: int
    eUW: int
    rho: float
    identity2_residual: float
    identity3_residual: float
    row_sum_residual: float

    @property
    def m(self) -> int:
        return len(self.U) + self.eU + self.eW + self.eUW

    @property
    def max_residual(self) -> float:
        return max(self.identity2_residual, self.identity3_residual, self.row_sum_residual)

    def rho_above_threshold(self) -> bool:
        """rho^2 - rho > m - 3/2, i.e. rho exceeds (1 + sqrt(4m-5))/2."""
        return self.rho * self.rho - self.rho > self.m - 1.5

    def chain_holds(self, slack: float = 1e-12) -> bool:
        """eta_1(U) >= e(W) - 3/2."""
        return self.eta1_U >= self.eW - 1.5 - slack

    @property
    def count_h1(self) -> int:
        return self.component_classes.count("H1")

    @property
    def count_h2(self) -> int:
        return self.component_classes.count("H2")

    def is_star_plus_isolated(self) -> bool:
        """G[U] is K_{1,a} plus isolated vertices with a >= 1."""
        return self.count_h2 == 1 and all(c in ("H2", "H3") for c in self.component_classes)


def certificate(g: Graph, pr: PerronResult | None = None) -> SpectralCertificate:
    """Eigenvector certificate of a connected graph at u* = argmax x."""
    if g.n == 0 or len(components(g)) != 1:
        raise StructuralError("certificate needs a connected graph")
    if pr is None:
        pr = perron(g)
    rho = pr.rho
    u_star = pr.u_star
    x = pr.x / pr.x[u_star]
    U_mask = g.adj[u_star]
    U = tuple(bits(U_mask))
    W_mask = g.vertex_mask() & ~U_mask & ~(1 << u_star)
    W = tuple(bits(W_mask))
    dU = {v: (g.adj[v] & U_mask).bit_count() for v in range(g.n)}
    eW = sum((g.adj[w] & W_mask).bit_count() for w in W) // 2
    eUW = sum(dU[w] for w in W)

    comps = []
    seen = 0
    for u in U:
        if seen >> u & 1:
            continue
        comp = 1 << u
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v] & U_mask
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(tuple(bits(comp)))
    classes = tuple(classify_component(g, c) for c in comps)
    per_comp = tuple(eta1(c, g, x) for c in comps)

    d_star = len(U)
    s_U = sum(dU[u] * x[u] for u in U)
    s_U1 = sum((dU[u] - 1) * x[u] for u in U)
    s_W = sum(dU[w] * x[w] for w in W)
    id2 = abs(rho * rho - d_star - s_U - s_W)
    id3 = abs(rho * rho - rho - d_star - s_U1 - s_W)
    row = abs(rho - sum(x[u] for u in U))
    return SpectralCertificate(
        u_star=u_star,
        U=U,
        W=W,
        eta1_U=eta1(U, g, x),
        eta1_per_component=per_comp,
        components_U=tuple(comps),
        component_classes=classes,
        eU=sum(dU[u] for u in U) // 2,
        eW=eW,
        eUW=eUW,
        rho=rho,
        identity2_residual=float(id2),
        identity3_residual=float(id3),
        row_sum_residual=float(row),
    )


def batch_spectral_radius(mats: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> np.ndarray:
    """Vectorised power iteration on a stack of adjacency matrices (B, n, n).

    Same shifted iteration as :func:`perron` but without splitting into
    components: the all-ones start has positive weight on every component's
    Perron vector, so the iteration still converges to the largest root.
    """
    mats = np.asarray(mats, dtype=float)
    count, n = mats.shape[0], mats.shape[1]
    rho = np.zeros(count)
    x = np.ones((count, n))
    active = np.arange(count)
    a = mats
    for _ in range(max_iter):
        if active.size == 0:
            return rho
        ax = np.einsum("bij,bj->bi", a, x)
        y = ax + x
        x = y / y.max(axis=1, keepdims=True)
        ax = np.einsum("bij,bj->bi", a, x)
        r = np.einsum("bi,bi->b", x, ax) / np.einsum("bi,bi->b", x, x)
        res = np.abs(ax - r[:, None] * x).max(axis=1)
        rho[active] = r
        keep = res > tol
        active, a, x = active[keep], a[keep], x[keep]
    if active.size:
        raise ConvergenceError("batched power iteration did not converge", float(res.max()), max_iter)
    return rho
