"""Exact finite-field arithmetic and dense matrices over GF(p^e).

Field elements are dense indices in [0, q).  The index encodes the
coefficient vector of the residue polynomial in base p (low degree first),
so 0 is the additive identity and 1 the multiplicative identity.  For small
fields full add/mul tables are precomputed; larger fields fall back to
on-the-fly polynomial arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

MAX_FIELD_SIZE = 1 << 16
# Full q x q tables only while they stay small; beyond this, element ops
# go through polynomial arithmetic (still exact, just slower).
_TABLE_ENTRY_LIMIT = 1 << 20

DEFAULT_ENUM_BUDGET = 1 << 20


class FieldError(ValueError):
    """Invalid field construction or element operation."""


class ShapeError(ValueError):
    """Matrix dimensions do not conform."""


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured budget."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomial helpers over GF(p); coefficient lists, low degree first --


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    deg = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # reduce modulo the monic polynomial `mod`
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(deg):
                out[i - deg + j] = (out[i - deg + j] - c * mod[j]) % p
    return _poly_trim(out[:deg] if len(out) > deg else out)


def _poly_powmod(a, k, mod, p):
    result = [1]
    base = list(a)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        k >>= 1
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([(x - y) % p for x, y in zip(a, b)])


def _poly_mod(a, b, p):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while a and len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        a = _poly_trim(a)
    return a


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _prime_factors(n: int):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(coeffs, p) -> bool:
    """Rabin test for a monic polynomial over GF(p), low degree first."""
    e = len(coeffs) - 1
    if e < 1:
        return False
    if coeffs[0] == 0:
        return False  # divisible by x
    x = [0, 1]
    # x^(p^e) == x (mod f)
    h = list(x)
    for _ in range(e):
        h = _poly_powmod(h, p, coeffs, p)
    if _poly_sub(h, x, p):
        return False
    for r in _prime_factors(e):
        h = list(x)
        for _ in range(e // r):
            h = _poly_powmod(h, p, coeffs, p)
        diff = _poly_sub(h, x, p)
        if not diff:
            return False
        g = _poly_gcd(coeffs, diff, p)
        if len(g) - 1 != 0:
            return False
    return True


def _smallest_irreducible(p: int, e: int):
    """Monic degree-e irreducible over GF(p), lexicographically smallest
    when the constant-upward coefficient tuple is compared."""
    if e == 1:
        # the polynomial x; any monic linear works, x is lex-smallest
        return (0, 1)
    for low in product(range(p), repeat=e):
        cand = list(low) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial found for GF({p}^{e})")


class FieldSpec:
    """GF(p^e) with deterministic modulus and table-driven arithmetic."""

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if e < 1:
            raise FieldError("exponent must be >= 1")
        q = p ** e
        if q > MAX_FIELD_SIZE:
            raise FieldError(f"field size {q} exceeds {MAX_FIELD_SIZE}")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = _smallest_irreducible(p, e)
        self._add = None
        self._mul = None
        self._neg = None
        self._inv = None
        if q * q <= _TABLE_ENTRY_LIMIT:
            self._build_tables()

    # element index <-> coefficient vector (low degree first, base p)

    def _decode(self, a: int):
        p, e = self.p, self.e
        out = []
        for _ in range(e):
            out.append(a % p)
            a //= p
        return out

    def _encode(self, coeffs) -> int:
        a = 0
        for c in reversed(coeffs[: self.e]):
            a = a * self.p + c
        return a

    def _add_raw(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        ca, cb = self._decode(a), self._decode(b)
        return self._encode([(x + y) % self.p for x, y in zip(ca, cb)])

    def _mul_raw(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        prod = _poly_mulmod(self._decode(a), self._decode(b), self.modulus, self.p)
        return self._encode(prod + [0] * self.e)

    def _build_tables(self):
        q = self.q
        self._add = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]
        self._mul = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
        self._neg = [self._add[a].index(0) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self._mul[a].index(1)
        self._inv = inv

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._add_raw(a, b)

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return self._neg[a]
        if self.e == 1:
            return (-a) % self.p
        return self._encode([(-c) % self.p for c in self._decode(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 has no multiplicative inverse")
        if self._inv is not None:
            return self._inv[a]
        # multiplicative group has order q-1
        r = 1
        base, k = a, self.q - 2
        while k:
            if k & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            k >>= 1
        return r

    def elements(self):
        return range(self.q)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e})"


@lru_cache(maxsize=None)
def field_make(p: int, e: int = 1) -> FieldSpec:
    """Deterministic GF(p^e); same (p, e) always yields the same modulus."""
    return FieldSpec(p, e)


def factor_prime_power(q: int) -> tuple[int, int]:
    """Split a prime power q into (p, e); raises FieldError otherwise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in _prime_factors(q):
        e = 0
        n = q
        while n % p == 0:
            n //= p
            e += 1
        if n == 1:
            return p, e
    raise FieldError(f"{q} is not a prime power")


def field_from_order(q: int) -> FieldSpec:
    p, e = factor_prime_power(q)
    return field_make(p, e)


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix over a FieldSpec; immutable."""

    rows: int
    cols: int
    entries: tuple
    field: FieldSpec

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError("entry count does not match rows*cols")

    @classmethod
    def from_rows(cls, rows_data, field: FieldSpec) -> "Matrix":
        r = len(rows_data)
        c = len(rows_data[0]) if r else 0
        flat = []
        for row in rows_data:
            if len(row) != c:
                raise ShapeError("ragged rows")
            flat.extend(int(x) % field.q if field.e == 1 else int(x) for x in row)
        return cls(r, c, tuple(flat), field)

    @classmethod
    def zero(cls, rows: int, cols: int, field: FieldSpec) -> "Matrix":
        return cls(rows, cols, (0,) * (rows * cols), field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Matrix":
        ent = [0] * (n * n)
        for i in range(n):
            ent[i * n + i] = 1
        return cls(n, n, tuple(ent), field)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int):
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def sub(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in subtraction")
        F = self.field
        return Matrix(self.rows, self.cols,
                      tuple(F.sub(a, b) for a, b in zip(self.entries, other.entries)),
                      F)

    def add(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in addition")
        F = self.field
        return Matrix(self.rows, self.cols,
                      tuple(F.add(a, b) for a, b in zip(self.entries, other.entries)),
                      F)

    def transpose(self) -> "Matrix":
        ent = tuple(self.entries[r * self.cols + c]
                    for c in range(self.cols) for r in range(self.rows))
        return Matrix(self.cols, self.rows, ent, self.field)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ShapeError("row count mismatch in hstack")
        ent = []
        for r in range(self.rows):
            ent.extend(self.row(r))
            ent.extend(other.row(r))
        return Matrix(self.rows, self.cols + other.cols, tuple(ent), self.field)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)


def rank(M: Matrix) -> int:
    """Rank by exact Gaussian elimination over the matrix's field."""
    F = M.field
    rows = [list(M.row(r)) for r in range(M.rows)]
    nrows, ncols = M.rows, M.cols
    rk = 0
    for col in range(ncols):
        pivot = next((r for r in range(rk, nrows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rk], rows[pivot] = rows[pivot], rows[rk]
        inv = F.inv(rows[rk][col])
        prow = rows[rk]
        for r in range(rk + 1, nrows):
            v = rows[r][col]
            if v:
                factor = F.mul(v, inv)
                row_r = rows[r]
                for c in range(col, ncols):
                    row_r[c] = F.sub(row_r[c], F.mul(factor, prow[c]))
        rk += 1
        if rk == nrows:
            break
    return rk


def col_space_intersection_dim(X: Matrix, Y: Matrix) -> int:
    """dim(col X ∩ col Y) = rk X + rk Y - rk [X | Y]."""
    if X.rows != Y.rows:
        raise ShapeError("column spaces live in different ambient spaces")
    return rank(X) + rank(Y) - rank(X.hstack(Y))


def row_space_intersection_dim(X: Matrix, Y: Matrix) -> int:
    if X.cols != Y.cols:
        raise ShapeError("row spaces live in different ambient spaces")
    return col_space_intersection_dim(X.transpose(), Y.transpose())


def enumerate_matrices(rows: int, cols: int, field: FieldSpec,
                       budget: int = DEFAULT_ENUM_BUDGET):
    """All q^(rows*cols) matrices exactly once, lexicographic entry order."""
    total = field.q ** (rows * cols)
    if total > budget:
        raise BudgetError(
            f"{total} matrices exceed enumeration budget {budget}")
    for ent in product(range(field.q), repeat=rows * cols):
        yield Matrix(rows, cols, ent, field)
