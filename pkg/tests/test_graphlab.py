import math
from itertools import combinations

import pytest

from srklab.gf import BudgetError
from srklab.graphlab import (PowerGraphSpec, SolverBudgetError, exact_T,
                             graph_stats, greedy_gv_code, greedy_partition,
                             max_independent_set, verify_cayley)
from srklab.space import (enumerate_space, make_params, min_distance,
                          srk_distance, srk_weight)
from srklab import counting


# -- independent oracles ----------------------------------------------------

def _brute_edges(params, k):
    """All adjacency pairs by direct pairwise distance computation."""
    elems = list(enumerate_space(params))
    adj = set()
    for i, x in enumerate(elems):
        for j in range(i + 1, len(elems)):
            if 1 <= srk_distance(x, elems[j]) <= k:
                adj.add((i, j))
    return elems, adj

def _brute_alpha(params, k):
    """Maximum independent set size by scanning all vertex subsets."""
    elems, adj = _brute_edges(params, k)
    V = len(elems)
    for size in range(V, 0, -1):
        for subset in combinations(range(V), size):
            pairs = combinations(subset, 2)
            if all(pr not in adj for pr in pairs):
                return size
    return 0

def _brute_T(params, k):
    """Triangles through the zero vertex / edges in its neighborhood."""
    zero = next(iter(enumerate_space(params)))
    nbhd = [x for x in enumerate_space(params)
            if 1 <= srk_weight(x) <= k]
    total = 0
    for i in range(len(nbhd)):
        for j in range(i + 1, len(nbhd)):
            if 1 <= srk_distance(nbhd[i], nbhd[j]) <= k:
                total += 1
    assert srk_weight(zero) == 0
    return total


CUBE = make_params(2, (1, 1, 1), (1, 1, 1))


def test_power_k_validation():
    with pytest.raises(ValueError):
        PowerGraphSpec(CUBE, 0)


def test_exact_T_examples():
    assert exact_T(PowerGraphSpec(CUBE, 1)) == 0
    assert exact_T(PowerGraphSpec(CUBE, 2)) == 12
    assert exact_T(PowerGraphSpec(make_params(2, (2,), (2,)), 1)) == 18
    assert exact_T(PowerGraphSpec(make_params(2, (1, 2), (2, 2)), 1)) == 21
    assert exact_T(PowerGraphSpec(make_params(3, (1, 1), (1, 1)), 1)) == 2


@pytest.mark.parametrize("q,n,m,k", [
    (2, (1, 1), (1, 1), 1),
    (2, (1, 1), (2, 1), 1),
    (2, (2,), (2,), 1),
    (3, (1, 1), (1, 1), 1),
    (2, (1, 1, 1), (1, 1, 1), 2),
    (2, (1, 2), (2, 2), 2),
])
def test_exact_T_against_brute_force(q, n, m, k):
    params = make_params(q, n, m)
    assert exact_T(PowerGraphSpec(params, k)) == _brute_T(params, k)


def test_cube_stats():
    stats = graph_stats(PowerGraphSpec(CUBE, 1))
    assert (stats.num_vertices, stats.D, stats.T, stats.Delta) == (8, 3, 0, 0)
    assert math.isinf(stats.eps_star)
    stats2 = graph_stats(PowerGraphSpec(CUBE, 2))
    assert (stats2.num_vertices, stats2.D, stats2.T, stats2.Delta) == (8, 6, 12, 32)
    assert stats2.to_json()["eps_star"] == pytest.approx(
        2 - math.log(12) / math.log(6))
    assert graph_stats(PowerGraphSpec(CUBE, 1)).to_json()["eps_star"] == "inf"


def test_stats_identity_3Delta_eq_TV():
    for q, n, m, k in [(2, (2,), (2,), 1), (3, (1, 1), (1, 1), 1),
                       (2, (1, 2), (2, 2), 2)]:
        s = graph_stats(PowerGraphSpec(make_params(q, n, m), k))
        assert 3 * s.Delta == s.T * s.num_vertices
        assert s.D == counting.degree_D(make_params(q, n, m), k)


def test_mis_examples():
    size, code = max_independent_set(PowerGraphSpec(CUBE, 2))
    assert size == 2
    assert min_distance(code) >= 3
    size2, code2 = max_independent_set(PowerGraphSpec(CUBE, 1))
    assert size2 == 4
    assert min_distance(code2) >= 2
    size3, code3 = max_independent_set(
        PowerGraphSpec(make_params(2, (2,), (2,)), 1))
    assert size3 == 4
    assert min_distance(code3) >= 2


@pytest.mark.parametrize("q,n,m,k", [
    (2, (1, 1), (1, 1), 1),
    (2, (1, 1), (2, 1), 1),
    (3, (1, 1), (1, 1), 1),
    (2, (2,), (2,), 1),
    (2, (1, 1, 1), (1, 1, 1), 2),
])
def test_mis_against_brute_force(q, n, m, k):
    params = make_params(q, n, m)
    size, code = max_independent_set(PowerGraphSpec(params, k))
    assert size == _brute_alpha(params, k)
    assert len(code) == size
    if size >= 2:
        assert min_distance(code) >= k + 1


def test_mis_deterministic():
    spec = PowerGraphSpec(make_params(2, (2,), (2,)), 1)
    a = max_independent_set(spec)
    b = max_independent_set(spec)
    assert a == b


def test_solver_node_budget():
    spec = PowerGraphSpec(make_params(2, (1, 2), (2, 2)), 1)
    with pytest.raises(SolverBudgetError):
        max_independent_set(spec, max_nodes=0)


def test_vertex_budget():
    spec = PowerGraphSpec(make_params(2, (3, 3), (3, 3)), 1)
    with pytest.raises(BudgetError):
        max_independent_set(spec, max_vertices=4096)


def test_greedy_gv_code_cube():
    code = greedy_gv_code(PowerGraphSpec(CUBE, 1))
    assert len(code) == 4
    assert min_distance(code) >= 2


def test_greedy_meets_sphere_covering_floor():
    for q, n, m, k in [(2, (2,), (2,), 1), (2, (1, 2), (2, 2), 1),
                       (3, (1, 1), (1, 1), 1), (2, (1, 1, 1), (1, 1, 1), 2)]:
        params = make_params(q, n, m)
        code = greedy_gv_code(PowerGraphSpec(params, k))
        V = counting.space_size(params)
        ball = counting.ball_volume(params, k)
        assert len(code) >= -(-V // ball)
        assert min_distance(code) >= k + 1


def test_greedy_partition_cube():
    classes = greedy_partition(PowerGraphSpec(CUBE, 1))
    assert sorted(len(c) for c in classes) == [4, 4]


def test_greedy_partition_properties():
    params = make_params(2, (1, 2), (2, 2))
    k = 1
    classes = greedy_partition(PowerGraphSpec(params, k))
    seen = set()
    for c in classes:
        for w in c.words:
            idx = w.index()
            assert idx not in seen
            seen.add(idx)
        if len(c) >= 2:
            assert min_distance(c) >= k + 1
    assert len(seen) == counting.space_size(params)
    D = counting.degree_D(params, k)
    assert len(classes) <= D + 1


def test_greedy_partition_order_policies_agree_on_coverage():
    params = make_params(3, (1, 1), (1, 1))
    spec = PowerGraphSpec(params, 1)
    for policy in ("lex", "weight-then-lex"):
        classes = greedy_partition(spec, order_policy=policy)
        assert sum(len(c) for c in classes) == counting.space_size(params)
    with pytest.raises(ValueError):
        greedy_partition(spec, order_policy="random")


def test_verify_cayley():
    rep = verify_cayley(PowerGraphSpec(make_params(2, (2,), (2,)), 1))
    assert rep["ok"]
    assert rep["expected_degree"] == 9
    assert rep["degrees_checked"] == 16
    assert rep["translations_checked"] == 64
    rep2 = verify_cayley(PowerGraphSpec(make_params(3, (1, 2), (2, 2)), 2),
                         sample_size=16, seed=7)
    assert rep2["ok"]
