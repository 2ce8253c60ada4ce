import numpy as np
import pytest

import gemfree.search as search
from gemfree.enumeration import EnumerationTask, enumerate_graphs
from gemfree.errors import CapacityError, ParameterError
from gemfree.graph import Graph, complete, path, s_minus, s_nk, union
from gemfree.graph6 import to_graph6
from gemfree.patterns import is_gem_free
from gemfree.spectral import bound_odd, perron, rho_star
from gemfree.search import (
    AnnealConfig,
    anneal_max,
    extremal_graph,
    in_theorem_range,
    matches_extremal,
    verify_bound_sweep,
    verify_lemma_suite,
)


def test_theorem_range():
    assert [m for m in range(1, 20) if in_theorem_range(m)] == [11, 13, 15, 17, 19]
    assert not in_theorem_range(90) and in_theorem_range(92) and in_theorem_range(93)


def test_extremal_graphs():
    assert extremal_graph(11) == s_nk(7, 2)
    assert extremal_graph(12) == s_minus(8, 1)
    assert matches_extremal(s_nk(7, 2), 11)
    assert not matches_extremal(s_nk(7, 2), 12)
    assert not matches_extremal(path(2), 1)
    assert not matches_extremal(path(3), 2)


@pytest.fixture(scope="module")
def sweep8():
    return verify_bound_sweep(8)


class TestSweep:
    def test_records(self, sweep8):
        ms = [r.m for r in sweep8.records]
        assert ms == list(range(11, 19))
        assert sum(r.num_graphs_scanned for r in sweep8.records) == sweep8.scanned
        assert not sweep8.violations and not sweep8.findings
        assert all(r.coverage == "partial" for r in sweep8.records)

    def test_attained_where_extremal_fits(self, sweep8):
        by_m = {r.m: r for r in sweep8.records}
        # S_{7,2}, S_{8,2}^{-1}, S_{8,2} fit in 8 vertices
        for m in (11, 12, 13):
            assert by_m[m].verdict == "attained"
            assert by_m[m].extra["matches_extremal"]
        assert by_m[11].achieved_max_rho == pytest.approx(bound_odd(11), abs=1e-9)
        assert by_m[12].achieved_max_rho == pytest.approx(rho_star(12), abs=1e-9)
        for m in range(14, 19):
            assert by_m[m].verdict == "bound_holds"

    def test_small_m_findings(self):
        res = verify_bound_sweep(7, m_min=1)
        assert [r.m for r in res.findings] == [6, 7, 8]
        assert res.violations == []
        by_m = {r.m: r for r in res.records}
        assert 2 not in by_m  # no parity bound for m = 2
        # K_4 plus a pendant edge beats S_{5,2} at m = 7
        assert by_m[7].achieved_max_rho == pytest.approx(perron(complete(4).add_vertices(1).add_edges([(0, 4)])).rho)

    def test_caps(self):
        with pytest.raises(CapacityError):
            verify_bound_sweep(11)
        with pytest.raises(ParameterError):
            verify_bound_sweep(6, fan_t=6)


def exhaustive_max(m):
    return max(perron(g).rho for g in enumerate_graphs(EnumerationTask.by_edges(m, gem_free=True)))


class TestAnneal:
    def test_config_validation(self):
        for kwargs in (
            {"m": 0},
            {"m": 121},
            {"m": 11, "moves": ("flip",)},
            {"m": 11, "moves": ()},
            {"m": 11, "restarts": 0},
            {"m": 11, "pool": 65},
            {"m": 11, "initial": s_nk(6, 2)},
        ):
            with pytest.raises(ParameterError):
                AnnealConfig(**kwargs)

    def test_deterministic(self):
        cfg = AnnealConfig(m=15, restarts=3, steps=60, seed=7, pool=20)
        a, b = anneal_max(cfg).to_dict(), anneal_max(cfg).to_dict()
        a.pop("elapsed_ms"), b.pop("elapsed_ms")
        assert a == b

    def test_workers_do_not_change_result(self):
        cfg = AnnealConfig(m=13, restarts=3, steps=40, seed=2, pool=16)
        one = anneal_max(cfg).to_dict()
        two = anneal_max(AnnealConfig(m=13, restarts=3, steps=40, seed=2, pool=16, workers=2)).to_dict()
        one.pop("elapsed_ms"), two.pop("elapsed_ms")
        assert one == two

    @pytest.mark.parametrize("m", [11, 12, 15, 20])
    def test_small_m_reaches_bound(self, m):
        rec = anneal_max(AnnealConfig(m=m, restarts=10, steps=100, seed=3, pool=m + 1))
        assert rec.verdict == "attained"
        assert rec.extra["matches_extremal"]
        assert rec.extra["max_state_rho"] <= rec.bound_value + 1e-9

    def test_m7_seeded_matches_exhaustive(self):
        # S_{5,2} is not the m = 7 maximum; the search climbs to the true one
        rec = anneal_max(AnnealConfig(m=7, restarts=5, steps=200, seed=1, initial=s_nk(5, 2), pool=8))
        assert rec.achieved_max_rho == pytest.approx(exhaustive_max(7), abs=1e-9)
        assert rec.achieved_max_rho > perron(s_nk(5, 2)).rho
        assert rec.verdict == "violation" and not in_theorem_range(7)

    @pytest.mark.parametrize("moves", [("swap",), ("rotate",), ("swap", "rotate")])
    def test_every_scored_state_is_valid(self, moves, monkeypatch):
        m = 13
        real = search._warm_rho
        scored = []

        def checked(a, x, tol, max_iter=20_000):
            adj = [int(sum(1 << j for j in np.flatnonzero(row))) for row in a]
            g = search._compact(adj)
            assert g.m == m and all(g.adj) and is_gem_free(g)
            scored.append(g.n)
            return real(a, x, tol, max_iter)

        monkeypatch.setattr(search, "_warm_rho", checked)
        rec = anneal_max(AnnealConfig(m=m, restarts=2, steps=80, seed=5, pool=16, moves=moves))
        g = rec.extra["maximizer"]
        assert g.m == m and all(g.adj) and is_gem_free(g)
        assert len(scored) == rec.num_graphs_scanned

    def test_no_quench(self):
        rec = anneal_max(AnnealConfig(m=11, restarts=3, steps=150, seed=0, pool=12, quench=False))
        assert rec.extra["max_state_rho"] <= rec.bound_value + 1e-9


class TestLemmaSuite:
    def test_default_passes(self):
        rep = verify_lemma_suite(seed=0, trials=300)
        assert rep.ok and not rep.counterexamples
        assert rep.checks["rotation"] == (300, 300)
        assert rep.checks["family_order"][1] == 108
        assert set(rep.checks) == {"rotation", "family_order", "certificate_identities", "maximizer_connected"}

    def test_inverted_hypothesis_is_skipped_not_failed(self):
        rep = verify_lemma_suite(seed=1, trials=200, invert_hypothesis=True)
        assert rep.ok
        assert rep.skipped["rotation"] > 150

    def test_report_records_counterexamples(self):
        rep = search.LemmaReport()
        rep.add("x", True)
        rep.add("x", False, union(path(2), path(2)))
        assert not rep.ok
        assert rep.checks["x"] == (1, 2)
        assert rep.counterexamples == [("x", to_graph6(union(path(2), path(2))).decode())]

    def test_random_connected_graph(self, rng):
        for _ in range(30):
            g = search.random_connected_graph(rng, 12, 0.05)
            assert search.is_connected(g) and g.n == 12

    def test_random_rotation_orientation(self, rng):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)])
        x = perron(g).x
        for _ in range(50):
            spec = search.random_rotation(rng, g, x)
            assert x[spec.u] >= x[spec.v]
