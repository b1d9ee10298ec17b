"""Named verification suites: every finite formula checked against an
independent brute-force oracle.  Each suite returns a report dict with
``ok``, a count of checks, and the first counterexample on failure."""

from __future__ import annotations

from collections import Counter

import numpy as np

from .gf import (Matrix, enumerate_matrices, field_make, rank,
                 col_space_intersection_dim, row_space_intersection_dim,
                 BudgetError)
from .space import (SrkParams, make_params, wt_preservation_check,
                    min_distance)
from . import bounds, counting, graphlab


def default_sweep():
    """The curated small-instance grid driving reports and sweep suites;
    every instance has |V| <= 1024."""
    out = []
    for q, shapes in [
        (2, [((1,), (1,)), ((1,), (2,)), ((2,), (2,)), ((2,), (3,)),
             ((3,), (3,)),
             ((1, 1), (1, 1)), ((1, 1, 1), (1, 1, 1)),
             ((1,) * 4, (1,) * 4), ((1,) * 5, (1,) * 5),
             ((1,) * 6, (1,) * 6), ((1,) * 7, (1,) * 7),
             ((1, 1), (2, 2)), ((1, 2), (2, 2)), ((1, 1), (1, 2)),
             ((2, 1), (2, 2)), ((1, 1, 1), (2, 2, 2)), ((2, 2), (2, 2))]),
        (3, [((1,), (1,)), ((1,), (2,)), ((2,), (2,)),
             ((1, 1), (1, 1)), ((1, 1, 1), (1, 1, 1)),
             ((1,) * 4, (1,) * 4), ((1,) * 5, (1,) * 5),
             ((1, 1), (2, 2)), ((1, 2), (1, 2))]),
    ]:
        for n, m in shapes:
            out.append(make_params(q, n, m))
    return out


def _report(name, checked, counterexample=None, extra=None):
    rep = {"suite": name, "checked": checked,
           "ok": counterexample is None,
           "counterexample": counterexample}
    if extra:
        rep.update(extra)
    return rep


def suite_rank_distribution():
    """Exhaustive rank histograms vs the closed-form counts."""
    checked = 0
    for q in (2, 3):
        F = field_make(q)
        for n, m in [(1, 1), (1, 2), (2, 2), (2, 3)]:
            hist = Counter(rank(M) for M in enumerate_matrices(n, m, F))
            for r in range(min(n, m) + 1):
                expect = counting.count_rank_matrices(n, m, r, q)
                checked += 1
                if hist.get(r, 0) != expect:
                    return _report("rank-distribution", checked,
                                   {"q": q, "shape": (n, m), "r": r,
                                    "enumerated": hist.get(r, 0),
                                    "formula": expect})
    return _report("rank-distribution", checked)


def _canonical_rank_matrix(n, i, F):
    ent = [0] * (n * n)
    for d in range(i):
        ent[d * n + d] = 1
    return Matrix(n, n, tuple(ent), F)


def suite_q_identity():
    """sum_c Q(i,j,c) = M(j) for i,j <= n <= 6, q in {2,3}; and Q against
    exhaustive fixed-X counting for n in {2,3}, q = 2."""
    checked = 0
    for q in (2, 3):
        for n in range(1, 7):
            for i in range(n + 1):
                for j in range(n + 1):
                    total = sum(counting.Q_closed(i, j, c, n, q)
                                for c in range(j + 1))
                    checked += 1
                    if total != counting.square_rank_count(n, j, q):
                        return _report("q-identity", checked,
                                       {"q": q, "n": n, "i": i, "j": j,
                                        "sum_Q": total})
    F2 = field_make(2)
    for n in (2, 3):
        for i in range(n + 1):
            X = _canonical_rank_matrix(n, i, F2)
            hist = Counter()
            for Y in enumerate_matrices(n, n, F2):
                hist[(rank(Y), col_space_intersection_dim(X, Y))] += 1
            for j in range(n + 1):
                for c in range(j + 1):
                    checked += 1
                    if hist.get((j, c), 0) != counting.Q_closed(i, j, c, n, 2):
                        return _report("q-identity", checked,
                                       {"oracle": "exhaustive", "n": n,
                                        "i": i, "j": j, "c": c,
                                        "enumerated": hist.get((j, c), 0)})
    return _report("q-identity", checked)


def suite_marsaglia(random_pairs: int = 100_000, seed: int = 0):
    """rk(X - Y) >= rk X + rk Y - c - r, exhaustively on 2x2 GF(2) pairs
    and on seeded random 4x4 GF(3) pairs."""
    checked = 0
    F2 = field_make(2)
    all22 = list(enumerate_matrices(2, 2, F2))
    for X in all22:
        for Y in all22:
            c = col_space_intersection_dim(X, Y)
            r = row_space_intersection_dim(X, Y)
            checked += 1
            if rank(X.sub(Y)) < rank(X) + rank(Y) - c - r:
                return _report("marsaglia", checked,
                               {"X": X.entries, "Y": Y.entries})
    F3 = field_make(3)
    rng = np.random.default_rng(seed)
    for _ in range(random_pairs):
        xe = tuple(int(v) for v in rng.integers(0, 3, size=16))
        ye = tuple(int(v) for v in rng.integers(0, 3, size=16))
        X = Matrix(4, 4, xe, F3)
        Y = Matrix(4, 4, ye, F3)
        c = col_space_intersection_dim(X, Y)
        r = row_space_intersection_dim(X, Y)
        checked += 1
        if rank(X.sub(Y)) < rank(X) + rank(Y) - c - r:
            return _report("marsaglia", checked, {"X": xe, "Y": ye})
    return _report("marsaglia", checked)


def suite_isometry():
    """Weight preservation srk = wt_H(f(.)) on all-rows-1 instances."""
    for params in (make_params(2, (1, 1), (2, 2)),
                   make_params(2, (1, 1, 1), (2, 2, 2)),
                   make_params(3, (1, 1), (2, 2))):
        rep = wt_preservation_check(params)
        if not rep["ok"]:
            return _report("isometry", rep["checked"], rep)
    return _report("isometry", 16 + 64 + 81)


def suite_bridge_inequality():
    """srk <= wt_H(f(.)) and injectivity on mixed-shape instances."""
    checked = 0
    for params in (make_params(2, (1, 2), (2, 2)),
                   make_params(2, (2,), (2,)),
                   make_params(2, (2, 1), (2, 2))):
        rep = wt_preservation_check(params)
        checked += rep["checked"]
        if not rep["ok"]:
            return _report("bridge-inequality", checked, rep)
    return _report("bridge-inequality", checked)


def _feasible_ks(params: SrkParams):
    return range(1, params.max_weight + 1)


def suite_cayley(max_vertices: int = 1024):
    """Degree regularity and translation invariance across the sweep."""
    checked = 0
    for params in default_sweep():
        if params.size() > max_vertices:
            continue
        for k in _feasible_ks(params):
            spec = graphlab.PowerGraphSpec(params, k)
            rep = graphlab.verify_cayley(spec, sample_size=16,
                                         max_vertices=max_vertices)
            checked += rep["degrees_checked"] + rep["translations_checked"]
            if not rep["ok"]:
                return _report("cayley", checked, rep)
    return _report("cayley", checked)


def suite_triangles(max_ball: int = 20000):
    """3*Delta = T*|V| as an exact integer identity, plus T <= T_upper
    for leading-square-block instances."""
    checked = 0
    for params in default_sweep():
        for k in _feasible_ks(params):
            spec = graphlab.PowerGraphSpec(params, k)
            try:
                stats = graphlab.graph_stats(spec, max_ball)
            except BudgetError:
                continue
            checked += 1
            if 3 * stats.Delta != stats.T * stats.num_vertices:
                return _report("triangles", checked,
                               {"params": params.describe(), "k": k})
            if params.n[0] == params.m[0] and k <= params.n[0]:
                cap = counting.T_upper(params, k)
                checked += 1
                if stats.T > cap:
                    return _report("triangles", checked,
                                   {"params": params.describe(), "k": k,
                                    "T": stats.T, "T_upper": cap})
    return _report("triangles", checked)


def suite_gv_chain(max_vertices: int = 1024, max_nodes: int = 200_000):
    """gv <= greedy <= alpha (alpha where the solver budget allows);
    partition classes all keep minimum distance >= k+1 and the average
    class size clears the GV floor."""
    checked = 0
    alpha_solved = 0
    for params in default_sweep():
        if params.size() > max_vertices:
            continue
        for k in _feasible_ks(params):
            d = k + 1
            spec = graphlab.PowerGraphSpec(params, k)
            gv = bounds.gv_lower(params, d)
            greedy = graphlab.greedy_gv_code(spec, max_vertices)
            checked += 1
            if not gv <= len(greedy):
                return _report("gv-chain", checked,
                               {"params": params.describe(), "d": d,
                                "gv": gv, "greedy": len(greedy)})
            if len(greedy) >= 2 and min_distance(greedy) < d:
                return _report("gv-chain", checked,
                               {"params": params.describe(), "d": d,
                                "reason": "greedy code distance too small"})
            try:
                alpha, witness = graphlab.max_independent_set(
                    spec, max_vertices, max_nodes)
                alpha_solved += 1
                checked += 1
                if not len(greedy) <= alpha:
                    return _report("gv-chain", checked,
                                   {"params": params.describe(), "d": d,
                                    "greedy": len(greedy), "alpha": alpha})
                if len(witness) >= 2 and min_distance(witness) < d:
                    return _report("gv-chain", checked,
                                   {"params": params.describe(), "d": d,
                                    "reason": "witness distance too small"})
            except graphlab.SolverBudgetError:
                pass
            classes = graphlab.greedy_partition(spec, max_vertices)
            V = params.size()
            if sum(len(c) for c in classes) != V:
                return _report("gv-chain", checked,
                               {"params": params.describe(), "d": d,
                                "reason": "classes do not partition"})
            for cls in classes:
                if len(cls) >= 2 and min_distance(cls) < d:
                    return _report("gv-chain", checked,
                                   {"params": params.describe(), "d": d,
                                    "reason": "partition class distance"})
            ratio = bounds.gv_exact_ratio(params, d)
            avg = V / len(classes)
            checked += 1
            if avg < int(ratio):  # floor of the exact rational
                return _report("gv-chain", checked,
                               {"params": params.describe(), "d": d,
                                "avg": avg, "gv_floor": int(ratio)})
    return _report("gv-chain", checked, extra={"alpha_solved": alpha_solved})


SUITES = {
    "rank-distribution": suite_rank_distribution,
    "q-identity": suite_q_identity,
    "marsaglia": suite_marsaglia,
    "isometry": suite_isometry,
    "bridge-inequality": suite_bridge_inequality,
    "cayley": suite_cayley,
    "triangles": suite_triangles,
    "gv-chain": suite_gv_chain,
}


def run_suite(name: str) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; have {sorted(SUITES)}")
    return SUITES[name]()
