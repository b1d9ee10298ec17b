"""The sum-rank Cayley power graph as an implicit graph: exact local
statistics (D, T, Delta), exact independence number, and greedy
partitions of the space into codes.

Vertices are identified with canonical vector indices.  All heavy loops
run over numpy digit tables with per-block rank lookup tables, so no
explicit edge list is ever built; the MIS solver and the greedy
procedures use adjacency bitmasks (python ints) instead.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .gf import BudgetError, Matrix, rank
from .space import SrkCode, SrkParams, vector_from_index
from . import counting

DEFAULT_MAX_VERTICES = 4096
DEFAULT_MAX_BALL = 20000
# Full enumeration of a single block's matrix space; blocks beyond this
# size make even ball-only statistics infeasible here.
MAX_BLOCK_SPACE = 1 << 20


@dataclass(frozen=True)
class PowerGraphSpec:
    """Gamma(F_q^{n x m})^k: adjacency(x, y) iff 1 <= srk(x - y) <= k."""

    params: SrkParams
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("power k must be at least 1")


@dataclass(frozen=True)
class GraphStats:
    num_vertices: int
    D: int
    T: int
    Delta: int
    eps_star: float

    def to_json(self) -> dict:
        eps = "inf" if math.isinf(self.eps_star) else self.eps_star
        return {"num_vertices": self.num_vertices, "D": self.D, "T": self.T,
                "Delta": self.Delta, "eps_star": eps}


@lru_cache(maxsize=None)
def _block_rank_table(ni: int, mi: int, p: int, e: int):
    """ranks[idx] for every block matrix, idx = canonical digit index."""
    from .gf import field_make
    F = field_make(p, e)
    size = F.q ** (ni * mi)
    if size > MAX_BLOCK_SPACE:
        raise BudgetError(f"block space of size {size} too large to tabulate")
    ranks = np.empty(size, dtype=np.uint8)
    i = 0
    for ent in product(range(F.q), repeat=ni * mi):
        ranks[i] = rank(Matrix(ni, mi, ent, F))
        i += 1
    return ranks


class SpaceTables:
    """Shared numpy lookup tables for one parameter set."""

    def __init__(self, params: SrkParams):
        self.params = params
        F = params.field
        q = F.q
        self.q = q
        self.L = params.total_dim
        self.sub_table = np.array(
            [[F.sub(a, b) for b in range(q)] for a in range(q)], dtype=np.uint8)
        self.add_table = np.array(
            [[F.add(a, b) for b in range(q)] for a in range(q)], dtype=np.uint8)
        self.blocks = []
        off = 0
        for ni, mi in params.block_shapes():
            ln = ni * mi
            radix = np.array([q ** (ln - 1 - i) for i in range(ln)],
                             dtype=np.int64)
            ranks = _block_rank_table(ni, mi, F.p, F.e)
            self.blocks.append((off, ln, radix, ranks))
            off += ln

    def weights_of(self, digits: np.ndarray) -> np.ndarray:
        """Sum-rank weights of row vectors of a (N, L) digit array."""
        w = np.zeros(digits.shape[0], dtype=np.int64)
        for off, ln, radix, ranks in self.blocks:
            idx = digits[:, off:off + ln].astype(np.int64) @ radix
            w += ranks[idx]
        return w

    def diff(self, digits: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.sub_table[digits, v]


@lru_cache(maxsize=32)
def _tables(params: SrkParams) -> SpaceTables:
    return SpaceTables(params)


def _all_digits(params: SrkParams, max_vertices: int) -> np.ndarray:
    """(V, L) digit table of the whole space in canonical order."""
    V = params.size()
    if V > max_vertices:
        raise BudgetError(f"|V| = {V} exceeds vertex budget {max_vertices}")
    q = params.q
    L = params.total_dim
    digits = np.empty((V, L), dtype=np.uint8)
    idx = np.arange(V, dtype=np.int64)
    for pos in range(L - 1, -1, -1):
        digits[:, pos] = idx % q
        idx //= q
    return digits


def _block_digits(q: int, ln: int) -> np.ndarray:
    size = q ** ln
    digits = np.empty((size, ln), dtype=np.uint8)
    idx = np.arange(size, dtype=np.int64)
    for pos in range(ln - 1, -1, -1):
        digits[:, pos] = idx % q
        idx //= q
    return digits


def ball_digits(spec: PowerGraphSpec, max_ball: int = DEFAULT_MAX_BALL,
                include_zero: bool = True) -> np.ndarray:
    """Digit rows of every vector with srk weight <= k, canonical order."""
    params, k = spec.params, spec.k
    vol = counting.ball_volume(params, k)
    if vol > max_ball:
        raise BudgetError(f"ball volume {vol} exceeds budget {max_ball}")
    tab = _tables(params)
    q = tab.q
    per_block = []
    for off, ln, radix, ranks in tab.blocks:
        per_block.append((ln, _block_digits(q, ln), ranks))
    rows = []
    t = len(per_block)

    def rec(bi: int, prefix: tuple, rem: int):
        if bi == t:
            rows.append(prefix)
            return
        ln, digs, ranks = per_block[bi]
        for idx in np.nonzero(ranks <= rem)[0]:
            rec(bi + 1, prefix + tuple(digs[idx]), rem - int(ranks[idx]))

    rec(0, (), k)
    out = np.array(rows, dtype=np.uint8)
    assert out.shape[0] == vol, "ball enumeration disagrees with volume"
    if not include_zero:
        out = out[1:]  # zero vector is the first row in canonical order
    return out


def exact_T(spec: PowerGraphSpec, max_ball: int = DEFAULT_MAX_BALL) -> int:
    """Edges inside the neighborhood of 0: unordered pairs {X, Y} of
    distinct nonzero ball elements with srk(X - Y) <= k.  Valid for every
    vertex by transitivity."""
    tab = _tables(spec.params)
    rows = ball_digits(spec, max_ball, include_zero=False)
    k = spec.k
    S = rows.shape[0]
    total = 0
    for i in range(S - 1):
        d = tab.sub_table[rows[i + 1:], rows[i]]
        w = tab.weights_of(d)
        total += int(np.count_nonzero(w <= k))
    return total


def graph_stats(spec: PowerGraphSpec,
                max_ball: int = DEFAULT_MAX_BALL) -> GraphStats:
    params, k = spec.params, spec.k
    V = counting.space_size(params)
    D = counting.degree_D(params, k)
    T = exact_T(spec, max_ball)
    delta3 = T * V
    if delta3 % 3 != 0:
        raise ArithmeticError("T*|V| not divisible by 3; transitivity broken")
    Delta = delta3 // 3
    eps = math.inf if T == 0 else counting.epsilon_star(D, T)
    return GraphStats(V, D, T, Delta, eps)


def adjacency_masks(spec: PowerGraphSpec,
                    max_vertices: int = DEFAULT_MAX_VERTICES):
    """Per-vertex neighbor bitmasks over the whole (budgeted) space."""
    params, k = spec.params, spec.k
    tab = _tables(params)
    digits = _all_digits(params, max_vertices)
    V = digits.shape[0]
    masks = []
    for v in range(V):
        d = tab.sub_table[digits, digits[v]]
        w = tab.weights_of(d)
        adj = (w >= 1) & (w <= k)
        packed = np.packbits(adj, bitorder="little")
        masks.append(int.from_bytes(packed.tobytes(), "little"))
    return masks


def _greedy_independent(masks, order) -> int:
    """Greedy independent-set bitmask, scanning vertices in `order`."""
    kept = 0
    for v in order:
        if masks[v] & kept == 0:
            kept |= 1 << v
    return kept


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SolverBudgetError(BudgetError):
    """The exact solver exceeded its node budget; no answer is reported."""


DEFAULT_MAX_NODES = 2_000_000


def _max_clique(n: int, nbr, max_nodes: int = DEFAULT_MAX_NODES) -> tuple:
    """Exact maximum clique (Tomita-style branch and bound with greedy
    coloring bounds); deterministic under the fixed vertex order.  Raises
    SolverBudgetError after max_nodes search nodes rather than returning
    an unproven answer."""
    best_size = 0
    best_set = 0

    # greedy seed: scan ascending, keep mutually adjacent vertices
    seed = 0
    seed_size = 0
    cand = (1 << n) - 1
    while cand:
        v = (cand & -cand).bit_length() - 1
        seed |= 1 << v
        seed_size += 1
        cand &= nbr[v]
    best_size, best_set = seed_size, seed

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))
    nodes = 0

    def expand(r_size: int, r_set: int, P: int):
        nonlocal best_size, best_set, nodes
        nodes += 1
        if nodes > max_nodes:
            raise SolverBudgetError(
                f"exceeded {max_nodes} branch-and-bound nodes")
        if P == 0:
            if r_size > best_size:
                best_size, best_set = r_size, r_set
            return
        # greedy coloring of P in ascending vertex order
        order = []
        colors = []
        rest = P
        color = 0
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append(v)
                colors.append(color)
                rest ^= 1 << v
                avail &= ~(1 << v)
                avail &= ~nbr[v]
        for idx in range(len(order) - 1, -1, -1):
            if r_size + colors[idx] <= best_size:
                return
            v = order[idx]
            expand(r_size + 1, r_set | (1 << v), P & nbr[v])
            P &= ~(1 << v)

    expand(0, 0, (1 << n) - 1)
    return best_size, best_set


def max_independent_set(spec: PowerGraphSpec,
                        max_vertices: int = DEFAULT_MAX_VERTICES,
                        max_nodes: int = DEFAULT_MAX_NODES) -> tuple:
    """Exact independence number of the power graph together with a
    witness code of minimum distance >= k+1."""
    params = spec.params
    masks = adjacency_masks(spec, max_vertices)
    V = len(masks)
    full = (1 << V) - 1
    comp = [full & ~masks[v] & ~(1 << v) for v in range(V)]
    size, mis_set = _max_clique(V, comp, max_nodes)
    words = tuple(vector_from_index(params, v) for v in _bits(mis_set))
    return size, SrkCode(params, words)


def _vertex_order(spec: PowerGraphSpec, V: int, tab: SpaceTables,
                  digits: np.ndarray, order_policy: str):
    if order_policy == "lex":
        return range(V)
    if order_policy == "weight-then-lex":
        w = tab.weights_of(digits)
        return sorted(range(V), key=lambda v: (int(w[v]), v))
    raise ValueError(f"unknown order policy {order_policy!r}")


def greedy_gv_code(spec: PowerGraphSpec,
                   max_vertices: int = DEFAULT_MAX_VERTICES,
                   order_policy: str = "lex") -> SrkCode:
    """Sphere-covering witness: keep a vertex iff it is at distance > k
    from everything kept so far.  Size >= ceil(|V| / ball_volume)."""
    params = spec.params
    masks = adjacency_masks(spec, max_vertices)
    tab = _tables(params)
    digits = _all_digits(params, max_vertices)
    order = _vertex_order(spec, len(masks), tab, digits, order_policy)
    kept = _greedy_independent(masks, order)
    words = tuple(vector_from_index(params, v) for v in _bits(kept))
    return SrkCode(params, words)


def greedy_partition(spec: PowerGraphSpec,
                     max_vertices: int = DEFAULT_MAX_VERTICES,
                     order_policy: str = "lex"):
    """Greedy coloring: partition of the space into codes of minimum
    distance >= k+1 (singletons allowed); at most D+1 classes."""
    params = spec.params
    masks = adjacency_masks(spec, max_vertices)
    tab = _tables(params)
    digits = _all_digits(params, max_vertices)
    V = len(masks)
    order = _vertex_order(spec, V, tab, digits, order_policy)
    class_bits = []
    for v in order:
        m = masks[v]
        for ci, bits in enumerate(class_bits):
            if m & bits == 0:
                class_bits[ci] = bits | (1 << v)
                break
        else:
            class_bits.append(1 << v)
    return [SrkCode(params, tuple(vector_from_index(params, v)
                                  for v in _bits(bits)))
            for bits in class_bits]


def verify_cayley(spec: PowerGraphSpec, sample_size: int = 64, seed: int = 0,
                  max_vertices: int = DEFAULT_MAX_VERTICES) -> dict:
    """Degree-regularity sweep (full, within budget) and sampled
    translation-invariance checks of adjacency."""
    params, k = spec.params, spec.k
    tab = _tables(params)
    D = counting.degree_D(params, k)
    report = {"params": params.describe(), "k": k, "expected_degree": D,
              "degree_violations": [], "translation_violations": [],
              "degrees_checked": 0, "translations_checked": 0}
    V = params.size()
    if V <= max_vertices:
        digits = _all_digits(params, max_vertices)
        for v in range(V):
            d = tab.sub_table[digits, digits[v]]
            w = tab.weights_of(d)
            deg = int(np.count_nonzero((w >= 1) & (w <= k)))
            report["degrees_checked"] += 1
            if deg != D:
                report["degree_violations"].append({"vertex": v, "degree": deg})
    rng = np.random.default_rng(seed)
    L = params.total_dim
    q = params.q
    for _ in range(sample_size):
        x, y, z = (rng.integers(0, q, size=L).astype(np.uint8)
                   for _ in range(3))
        dxy = tab.weights_of(tab.sub_table[x[None, :], y])[0]
        xs = tab.add_table[x, z]
        ys = tab.add_table[y, z]
        dxyz = tab.weights_of(tab.sub_table[xs[None, :], ys])[0]
        adj_before = 1 <= dxy <= k
        adj_after = 1 <= dxyz <= k
        report["translations_checked"] += 1
        if adj_before != adj_after:
            report["translation_violations"].append(
                {"x": x.tolist(), "y": y.tolist(), "z": z.tolist()})
    report["ok"] = (not report["degree_violations"]
                    and not report["translation_violations"])
    return report
