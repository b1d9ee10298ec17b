"""The ambient sum-rank space: tuples of matrices, weight/distance,
enumeration, codes, and the bridge map into Hamming space over GF(q^m).

Canonical serialization order of a vector: blocks in order, entries
row-major, field indices; the induced integer index (first entry most
significant, base q) drives every deterministic greedy procedure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .gf import (BudgetError, FieldSpec, Matrix, ShapeError, field_make,
                 rank, DEFAULT_ENUM_BUDGET)


@dataclass(frozen=True)
class SrkParams:
    """Parameters (q; n_1..n_t; m_1..m_t) of a space F_q^{n x m}."""

    field: FieldSpec
    n: tuple
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if len(self.n) != len(self.m) or not self.n:
            raise ValueError("n and m must be nonempty tuples of equal length")
        for ni, mi in zip(self.n, self.m):
            if ni < 1 or mi < 1:
                raise ValueError("block dimensions must be positive")
            if mi < ni:
                raise ValueError(
                    f"m_i >= n_i required for every block (got {ni}x{mi})")

    @property
    def t(self) -> int:
        return len(self.n)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def total_dim(self) -> int:
        return sum(ni * mi for ni, mi in zip(self.n, self.m))

    @property
    def max_weight(self) -> int:
        return sum(min(ni, mi) for ni, mi in zip(self.n, self.m))

    def size(self) -> int:
        return self.q ** self.total_dim

    def block_shapes(self):
        return list(zip(self.n, self.m))

    def describe(self) -> str:
        return (f"q={self.q} n=({','.join(map(str, self.n))}) "
                f"m=({','.join(map(str, self.m))})")


def make_params(q: int, n, m) -> SrkParams:
    from .gf import field_from_order
    return SrkParams(field_from_order(q), tuple(n), tuple(m))


@dataclass(frozen=True)
class SrkVector:
    params: SrkParams
    blocks: tuple

    def __post_init__(self):
        if len(self.blocks) != self.params.t:
            raise ShapeError("wrong number of blocks")
        for blk, (ni, mi) in zip(self.blocks, self.params.block_shapes()):
            if (blk.rows, blk.cols) != (ni, mi):
                raise ShapeError(f"block shape {blk.rows}x{blk.cols}, "
                                 f"expected {ni}x{mi}")

    @classmethod
    def zero(cls, params: SrkParams) -> "SrkVector":
        return cls(params, tuple(Matrix.zero(ni, mi, params.field)
                                 for ni, mi in params.block_shapes()))

    def sub(self, other: "SrkVector") -> "SrkVector":
        if self.params != other.params:
            raise ShapeError("vectors from different spaces")
        return SrkVector(self.params,
                         tuple(a.sub(b) for a, b in zip(self.blocks, other.blocks)))

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def serialize(self) -> tuple:
        """Flat entry tuple in canonical order."""
        out = []
        for b in self.blocks:
            out.extend(b.entries)
        return tuple(out)

    def index(self) -> int:
        idx = 0
        q = self.params.q
        for d in self.serialize():
            idx = idx * q + d
        return idx


def vector_from_digits(params: SrkParams, digits) -> SrkVector:
    blocks = []
    pos = 0
    for ni, mi in params.block_shapes():
        ln = ni * mi
        blocks.append(Matrix(ni, mi, tuple(digits[pos:pos + ln]), params.field))
        pos += ln
    return SrkVector(params, tuple(blocks))


def vector_from_index(params: SrkParams, idx: int) -> SrkVector:
    q = params.q
    L = params.total_dim
    digits = [0] * L
    for i in range(L - 1, -1, -1):
        digits[i] = idx % q
        idx //= q
    return vector_from_digits(params, digits)


def srk_weight(x: SrkVector) -> int:
    return sum(rank(b) for b in x.blocks)


def srk_distance(x: SrkVector, y: SrkVector) -> int:
    return srk_weight(x.sub(y))


def enumerate_space(params: SrkParams, budget: int = DEFAULT_ENUM_BUDGET):
    """Every vector exactly once, ascending canonical index."""
    total = params.size()
    if total > budget:
        raise BudgetError(f"space of size {total} exceeds budget {budget}")
    L = params.total_dim
    for digits in product(range(params.q), repeat=L):
        yield vector_from_digits(params, digits)


def enumerate_sphere(params: SrkParams, w: int,
                     budget: int = DEFAULT_ENUM_BUDGET):
    """Every vector of sum-rank weight exactly w, canonical order."""
    for x in enumerate_space(params, budget):
        if srk_weight(x) == w:
            yield x


@dataclass(frozen=True)
class HammingVector:
    """Vector over the extension field GF(q^m); entries are integers in
    [0, q^m) encoding coefficient vectors base q over the ground field."""

    base_field: FieldSpec
    ext_degree: int
    entries: tuple

    @property
    def length(self) -> int:
        return len(self.entries)

    def hamming_weight(self) -> int:
        return sum(1 for e in self.entries if e != 0)

    def sub(self, other: "HammingVector") -> "HammingVector":
        if (self.base_field, self.ext_degree) != (other.base_field, other.ext_degree):
            raise ShapeError("extension fields differ")
        F, m = self.base_field, self.ext_degree
        q = F.q
        out = []
        for a, b in zip(self.entries, other.entries):
            v = 0
            mult = 1
            for _ in range(m):
                v += F.sub(a % q, b % q) * mult
                a //= q
                b //= q
                mult *= q
            out.append(v)
        return HammingVector(F, m, tuple(out))


def _ext_digits(value: int, q: int, m: int):
    out = []
    for _ in range(m):
        out.append(value % q)
        value //= q
    return out


def _ext_encode(digits, q: int) -> int:
    v = 0
    for d in reversed(digits):
        v = v * q + d
    return v


def polynomial_basis(q: int, m: int):
    """The basis (1, alpha, ..., alpha^{m-1}) of GF(q^m) with alpha a root
    of the canonical degree-m modulus, in coefficient encoding."""
    return [q ** j for j in range(m)]


def _check_basis(basis, field: FieldSpec, m: int):
    if len(basis) != m:
        raise ValueError(f"basis must have {m} elements")
    q = field.q
    mat = Matrix.from_rows([_ext_digits(b, q, m) for b in basis], field)
    if rank(mat) != m:
        raise ValueError("basis elements are not linearly independent over GF(q)")


def f_map(x: SrkVector, basis=None) -> HammingVector:
    """Row-wise basis expansion of each block into GF(q^m), m = max m_i;
    blocks with m_i < m behave as if right-padded with zero columns.
    Output length N = sum n_i."""
    params = x.params
    F = params.field
    q = F.q
    m = max(params.m)
    if basis is None:
        basis = polynomial_basis(q, m)
    _check_basis(basis, F, m)
    out = []
    for blk in x.blocks:
        for r in range(blk.rows):
            acc = [0] * m
            for j in range(blk.cols):
                s = blk[r, j]
                if s:
                    bd = _ext_digits(basis[j], q, m)
                    acc = [F.add(a, F.mul(s, d)) for a, d in zip(acc, bd)]
            out.append(_ext_encode(acc, q))
    return HammingVector(F, m, tuple(out))


def wt_preservation_check(x_space_or_params, basis=None,
                          budget: int = DEFAULT_ENUM_BUDGET) -> dict:
    """Exhaustively check srk(X) <= wt_H(f(X)); equality is additionally
    required when n = (1,...,1) and all m_i coincide.  Also records
    injectivity of f over the swept space."""
    params = x_space_or_params
    expect_equality = all(ni == 1 for ni in params.n) and len(set(params.m)) == 1
    violations = []
    images = {}
    injective = True
    checked = 0
    for x in enumerate_space(params, budget):
        w = srk_weight(x)
        img = f_map(x, basis)
        wh = img.hamming_weight()
        if w > wh or (expect_equality and w != wh):
            violations.append({"vector": x.serialize(), "srk": w, "wt_h": wh})
        if img.entries in images:
            injective = False
        images[img.entries] = x
        checked += 1
    return {
        "params": params.describe(),
        "checked": checked,
        "expect_equality": expect_equality,
        "violations": violations,
        "injective": injective,
        "ok": not violations and injective,
    }


@dataclass(frozen=True)
class SrkCode:
    """A nonempty set of vectors in a common space; words kept in canonical
    index order."""

    params: SrkParams
    words: tuple

    def __post_init__(self):
        if not self.words:
            raise ValueError("a code is a nonempty subset")
        idxs = [w.index() for w in self.words]
        if len(set(idxs)) != len(idxs):
            raise ValueError("duplicate codewords")
        order = sorted(range(len(idxs)), key=lambda i: idxs[i])
        object.__setattr__(self, "words", tuple(self.words[i] for i in order))

    def __len__(self):
        return len(self.words)


def min_distance(code: SrkCode) -> int:
    if len(code) < 2:
        raise ValueError("minimum distance needs at least two codewords")
    best = None
    ws = code.words
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            d = srk_distance(ws[i], ws[j])
            if best is None or d < best:
                best = d
                if best == 1:
                    return 1
    return best


def code_to_json(code: SrkCode) -> dict:
    p = code.params
    return {
        "q": p.q,
        "p": p.field.p,
        "e": p.field.e,
        "n": list(p.n),
        "m": list(p.m),
        "words": [[list(b.entries) for b in w.blocks] for w in code.words],
    }


def code_from_json(data: dict) -> SrkCode:
    fld = field_make(data["p"], data["e"])
    if fld.q != data["q"]:
        raise ValueError("inconsistent q, p, e in code file")
    params = SrkParams(fld, tuple(data["n"]), tuple(data["m"]))
    words = []
    for w in data["words"]:
        blocks = tuple(Matrix(ni, mi, tuple(ent), fld)
                       for (ni, mi), ent in zip(params.block_shapes(), w))
        words.append(SrkVector(params, blocks))
    return SrkCode(params, tuple(words))


def save_code(code: SrkCode, path) -> None:
    with open(path, "w") as fh:
        json.dump(code_to_json(code), fh, indent=1, sort_keys=True)


def load_code(path) -> SrkCode:
    with open(path) as fh:
        return code_from_json(json.load(fh))
