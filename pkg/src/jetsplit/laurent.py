"""Laurent polynomials in one variable t and square matrices over them.

Polynomials are stored sparsely as ``{exponent: raw coefficient}`` with no
zero coefficients.  Everything lives in the single chart coordinate t;
"plus" side means exponents >= 0 (the ring F[t]), "minus" side means
exponents <= 0 (the ring F[1/t]).
"""

from __future__ import annotations

import enum
import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidParams,
    NotInvertible,
    ShapeMismatch,
)
from .exactfield import FieldElement, FieldSpec, Raw

QQ = FieldSpec(0)

Scalar = Union[int, Fraction, FieldElement]


class PolySide(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


def _raw_scalar(c: Scalar, field: FieldSpec) -> Raw:
    if isinstance(c, FieldElement):
        if c.field != field:
            raise FieldMismatch(f"{c.field} vs {field}")
        return c.value
    return field.raw(c)


class LaurentPoly:
    """Element of F[t, 1/t].  Treat instances as immutable."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None, field: FieldSpec = QQ):
        clean: dict[int, Raw] = {}
        if terms:
            for e, c in terms.items():
                v = _raw_scalar(c, field)
                if v:
                    clean[int(e)] = v
        self.field = field
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, terms: dict[int, Raw], field: FieldSpec) -> LaurentPoly:
        # terms must already be raw, canonical and zero-free
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field: FieldSpec = QQ) -> LaurentPoly:
        return cls._make({}, field)

    @classmethod
    def one(cls, field: FieldSpec = QQ) -> LaurentPoly:
        return cls._make({0: field.one}, field)

    @classmethod
    def monomial(cls, coeff: Scalar, exp: int, field: FieldSpec = QQ) -> LaurentPoly:
        return cls({exp: coeff}, field)

    @classmethod
    def const(cls, coeff: Scalar, field: FieldSpec = QQ) -> LaurentPoly:
        return cls({0: coeff}, field)

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def low(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def high(self) -> int | None:
        return max(self.terms) if self.terms else None

    @property
    def support(self) -> list[int]:
        return sorted(self.terms)

    def coeff(self, e: int) -> FieldElement:
        return FieldElement(self.terms.get(e, self.field.zero), self.field)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def part(self, lo: int | None = None, hi: int | None = None) -> LaurentPoly:
        """Terms whose exponent lies in the closed range [lo, hi]."""
        out = {
            e: c
            for e, c in self.terms.items()
            if (lo is None or e >= lo) and (hi is None or e <= hi)
        }
        return LaurentPoly._make(out, self.field)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: LaurentPoly) -> None:
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _coerce(self, other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return LaurentPoly.const(other, self.field)
        return None

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = f.add(out[e], c) if e in out else c
            if v:
                out[e] = v
            else:
                del out[e]
        return LaurentPoly._make(out, f)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        f = self.field
        return LaurentPoly._make({e: f.neg(c) for e, c in self.terms.items()}, f)

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(_raw_scalar(other, self.field))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        f = self.field
        if not self.terms or not other.terms:
            return LaurentPoly._make({}, f)
        out: dict[int, Raw] = {}
        p = f.characteristic
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return LaurentPoly._make(out, f)

    __rmul__ = __mul__

    def scale(self, c: Raw) -> LaurentPoly:
        f = self.field
        if not c:
            return LaurentPoly._make({}, f)
        return LaurentPoly._make({e: f.mul(v, c) for e, v in self.terms.items()}, f)

    def shift(self, m: int) -> LaurentPoly:
        """Multiply by t^m."""
        return LaurentPoly._make({e + m: c for e, c in self.terms.items()}, self.field)

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not is_unit(self):
                raise NotInvertible(f"{self} is not a unit")
            return unit_inverse(self) ** (-n)
        out = LaurentPoly.one(self.field)
        for _ in range(n):
            out = out * self
        return out

    def divmod_poly(self, other: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Euclidean division in F[t]; both operands must have no negative exponents."""
        self._check(other)
        if not other.terms:
            raise DivisionByZero("division by the zero polynomial")
        if (self.terms and self.low < 0) or other.low < 0:
            raise InvalidParams("divmod_poly needs polynomials in F[t]")
        f = self.field
        db = other.high
        lead_inv = f.inv(other.terms[db])
        rem = dict(self.terms)
        quo: dict[int, Raw] = {}
        while rem:
            dr = max(rem)
            if dr < db:
                break
            c = f.mul(rem[dr], lead_inv)
            s = dr - db
            quo[s] = c
            for e, v in other.terms.items():
                k = e + s
                nv = f.sub(rem.get(k, f.zero), f.mul(c, v))
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return LaurentPoly._make(quo, f), LaurentPoly._make(rem, f)

    def exquo(self, other: LaurentPoly) -> LaurentPoly:
        """Exact quotient in F[t, 1/t] of polynomials whose ratio is a Laurent polynomial."""
        if not other.terms:
            raise DivisionByZero("division by the zero polynomial")
        if not self.terms:
            return self
        a = self.shift(-self.low)
        b = other.shift(-other.low)
        q, r = a.divmod_poly(b)
        if r:
            raise InvalidParams(f"{other} does not divide {self}")
        return q.shift(self.low - other.low)

    # -- comparison / text -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, FieldElement)):
            other = LaurentPoly.const(other, self.field)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.characteristic, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.field.text(self.terms[e])
            parts.append(c if e == 0 else f"{c}*t^{e}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self}, {self.field})"

    def pretty(self) -> str:
        """Human-oriented text: descending exponents, unit coefficients elided.

        Residues mod p are shown by their symmetric lift, so -1 in F_3 prints
        as a minus sign rather than 2.
        """
        if not self.terms:
            return "0"
        p = self.field.characteristic
        out = ""
        for i, e in enumerate(sorted(self.terms, reverse=True)):
            c = self.terms[e]
            if p and c > p // 2:
                c -= p
            neg = c < 0
            mag = str(-c if neg else c)
            if e == 0:
                body = mag
            elif mag == "1":
                body = f"t^{e}"
            else:
                body = f"{mag}*t^{e}"
            if i == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    @classmethod
    def parse(cls, text: str, field: FieldSpec = QQ) -> LaurentPoly:
        """Inverse of ``str`` (the canonical form)."""
        text = text.strip()
        if text == "0":
            return cls.zero(field)
        terms: dict[int, Raw] = {}
        for chunk in text.split(" + "):
            if "*t^" in chunk:
                c, e = chunk.split("*t^")
                exp = int(e)
            else:
                c, exp = chunk, 0
            if exp in terms:
                raise InvalidParams(f"repeated exponent in {text!r}")
            terms[exp] = field.parse_raw(c)
        return cls(terms, field)


def is_unit(a: LaurentPoly) -> bool:
    """True iff ``a`` is c*t^m with c nonzero."""
    return len(a.terms) == 1


def unit_inverse(a: LaurentPoly) -> LaurentPoly:
    if not is_unit(a):
        raise NotInvertible(f"{a} is not a unit")
    (e, c), = a.terms.items()
    return LaurentPoly._make({-e: a.field.inv(c)}, a.field)


def _as_poly(x, field: FieldSpec) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        if x.field != field:
            raise FieldMismatch(f"{x.field} vs {field}")
        return x
    if isinstance(x, str):
        return LaurentPoly.parse(x, field)
    return LaurentPoly.const(x, field)


class LaurentMatrix:
    """Square matrix over F[t, 1/t].  Treat instances as immutable."""

    __slots__ = ("field", "rows")

    def __init__(self, rows: Sequence[Sequence], field: FieldSpec = QQ):
        r = len(rows)
        if r == 0:
            raise ShapeMismatch("empty matrix")
        built = []
        for row in rows:
            if len(row) != r:
                raise ShapeMismatch(f"row of length {len(row)} in a rank {r} matrix")
            built.append(tuple(_as_poly(x, field) for x in row))
        self.field = field
        self.rows = tuple(built)

    @classmethod
    def _make(cls, rows, field: FieldSpec) -> LaurentMatrix:
        obj = cls.__new__(cls)
        obj.field = field
        obj.rows = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def identity(cls, rank: int, field: FieldSpec = QQ) -> LaurentMatrix:
        z, o = LaurentPoly.zero(field), LaurentPoly.one(field)
        return cls._make([[o if i == j else z for j in range(rank)] for i in range(rank)], field)

    @classmethod
    def diagonal(cls, entries: Sequence, field: FieldSpec = QQ) -> LaurentMatrix:
        r = len(entries)
        z = LaurentPoly.zero(field)
        diag = [_as_poly(x, field) for x in entries]
        return cls._make([[diag[i] if i == j else z for j in range(r)] for i in range(r)], field)

    @classmethod
    def monomial_diagonal(cls, exps: Iterable[int], field: FieldSpec = QQ) -> LaurentMatrix:
        return cls.diagonal([LaurentPoly.monomial(1, e, field) for e in exps], field)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> Iterable[LaurentPoly]:
        for row in self.rows:
            yield from row

    def column(self, j: int) -> tuple[LaurentPoly, ...]:
        return tuple(row[j] for row in self.rows)

    def min_exponent(self) -> int | None:
        lows = [p.low for p in self.entries() if p.terms]
        return min(lows) if lows else None

    def max_exponent(self) -> int | None:
        highs = [p.high for p in self.entries() if p.terms]
        return max(highs) if highs else None

    def transpose(self) -> LaurentMatrix:
        return LaurentMatrix._make(zip(*self.rows), self.field)

    def times_poly(self, p: LaurentPoly) -> LaurentMatrix:
        return LaurentMatrix._make([[x * p for x in row] for row in self.rows], self.field)

    def shift(self, m: int) -> LaurentMatrix:
        return LaurentMatrix._make([[x.shift(m) for x in row] for row in self.rows], self.field)

    def is_diagonal(self) -> bool:
        return all(
            not self.rows[i][j] for i in range(self.rank) for j in range(self.rank) if i != j
        )

    def is_lower_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.rank) for j in range(i + 1, self.rank))

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        return mat_mul(self, other)

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        _check_pair(self, other)
        return LaurentMatrix._make(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.field,
        )

    def det(self) -> LaurentPoly:
        return mat_det(self)

    def inverse(self) -> LaurentMatrix:
        return mat_inverse(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]], field: FieldSpec = QQ) -> LaurentMatrix:
        return cls([[LaurentPoly.parse(s, field) for s in row] for row in data], field)

    def pretty(self) -> str:
        return "[" + ",".join("[" + ", ".join(x.pretty() for x in row) + "]" for row in self.rows) + "]"

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.to_json()}, {self.field})"


def _check_pair(a: LaurentMatrix, b: LaurentMatrix) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.rank != b.rank:
        raise ShapeMismatch(f"rank {a.rank} vs rank {b.rank}")


def mat_mul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    _check_pair(a, b)
    r = a.rank
    zero = LaurentPoly.zero(a.field)
    cols = [b.column(j) for j in range(r)]
    out = []
    for row in a.rows:
        new_row = []
        for col in cols:
            acc = zero
            for x, y in zip(row, col):
                if x.terms and y.terms:
                    acc = acc + x * y
            new_row.append(acc)
        out.append(new_row)
    return LaurentMatrix._make(out, a.field)


def _det_cofactor(rows: list[list[LaurentPoly]], field: FieldSpec) -> LaurentPoly:
    r = len(rows)
    if r == 1:
        return rows[0][0]
    if r == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = LaurentPoly.zero(field)
    for j, x in enumerate(rows[0]):
        if not x.terms:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = x * _det_cofactor(minor, field)
        acc = acc - term if j % 2 else acc + term
    return acc


def _det_bareiss(rows: list[list[LaurentPoly]], field: FieldSpec) -> LaurentPoly:
    # Clear denominators row by row so all entries lie in F[t].
    r = len(rows)
    total_shift = 0
    work = []
    for row in rows:
        lows = [x.low for x in row if x.terms]
        if not lows:
            return LaurentPoly.zero(field)
        s = -min(lows)
        total_shift += s
        work.append([x.shift(s) for x in row])
    sign = 1
    prev = LaurentPoly.one(field)
    for k in range(r - 1):
        if not work[k][k].terms:
            for i in range(k + 1, r):
                if work[i][k].terms:
                    work[k], work[i] = work[i], work[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero(field)
        pivot = work[k][k]
        for i in range(k + 1, r):
            for j in range(k + 1, r):
                num = pivot * work[i][j] - work[i][k] * work[k][j]
                q, rem = num.divmod_poly(prev)
                if rem.terms:
                    raise ArithmeticError("Bareiss step was not exact")
                work[i][j] = q
            work[i][k] = LaurentPoly.zero(field)
        prev = pivot
    det = work[r - 1][r - 1].shift(-total_shift)
    return -det if sign < 0 else det


def mat_det(a: LaurentMatrix) -> LaurentPoly:
    """Exact determinant: cofactor expansion up to rank 4, Bareiss beyond."""
    rows = [list(row) for row in a.rows]
    if a.rank <= 4:
        return _det_cofactor(rows, a.field)
    return _det_bareiss(rows, a.field)


def mat_inverse(a: LaurentMatrix) -> LaurentMatrix:
    """Inverse over F[t, 1/t] via the adjugate; requires a unit determinant."""
    d = mat_det(a)
    if not is_unit(d):
        raise NotInvertible(f"determinant {d} is not a unit")
    dinv = unit_inverse(d)
    r = a.rank
    if r == 1:
        return LaurentMatrix._make([[dinv]], a.field)
    rows = [list(row) for row in a.rows]
    out = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(rows) if k != i]
            m = LaurentMatrix._make(minor, a.field)
            cof = mat_det(m) * dinv
            out[j][i] = -cof if (i + j) % 2 else cof
    return LaurentMatrix._make(out, a.field)


def side_check(a: LaurentMatrix, side: PolySide) -> bool:
    """True iff every entry lies in F[t] (plus) or F[1/t] (minus)."""
    for x in a.entries():
        if not x.terms:
            continue
        if side is PolySide.PLUS and x.low < 0:
            return False
        if side is PolySide.MINUS and x.high > 0:
            return False
    return True


def permutation_matrix(perm: Sequence[int], field: FieldSpec = QQ) -> LaurentMatrix:
    """Matrix with a 1 in row i, column perm[i]."""
    r = len(perm)
    z, o = LaurentPoly.zero(field), LaurentPoly.one(field)
    return LaurentMatrix._make([[o if perm[i] == j else z for j in range(r)] for i in range(r)], field)


def _random_nonzero(rng: random.Random, field: FieldSpec) -> Raw:
    p = field.characteristic
    if p == 0:
        return Fraction(rng.choice((-3, -2, -1, 1, 2, 3)))
    return rng.randrange(1, p)


def random_unimodular(
    rank: int,
    side: PolySide,
    degree_bound: int,
    seed: int,
    field: FieldSpec = QQ,
    steps: int | None = None,
) -> LaurentMatrix:
    """Seeded product of elementary operations, invertible over the chosen side.

    Each step is a row swap, a row scaling by a nonzero constant, or adding
    ``c * t^(+-j)`` times one row to another with ``0 <= j <= degree_bound``.
    The determinant is a nonzero constant by construction.
    """
    if rank < 1 or degree_bound < 0:
        raise InvalidParams("rank >= 1 and degree_bound >= 0 required")
    rng = random.Random(seed)
    sgn = 1 if side is PolySide.PLUS else -1
    rows = [[{0: field.one} if i == j else {} for j in range(rank)] for i in range(rank)]
    n_steps = steps if steps is not None else 2 * rank + 1
    if rank == 1:
        c = _random_nonzero(rng, field)
        return LaurentMatrix._make([[LaurentPoly._make({0: c}, field)]], field)
    for _ in range(n_steps):
        kind = rng.random()
        a, b = rng.sample(range(rank), 2)
        if kind < 0.15:
            rows[a], rows[b] = rows[b], rows[a]
        elif kind < 0.3:
            c = _random_nonzero(rng, field)
            rows[a] = [{e: field.mul(v, c) for e, v in x.items()} for x in rows[a]]
        else:
            c = _random_nonzero(rng, field)
            s = sgn * rng.randint(0, degree_bound)
            rows[a] = _add_shifted(rows[a], rows[b], c, s, field)
    return LaurentMatrix._make(
        [[LaurentPoly._make(x, field) for x in row] for row in rows], field
    )


def _add_shifted(dst, src, c: Raw, s: int, field: FieldSpec):
    out = []
    for xd, xs in zip(dst, src):
        acc = dict(xd)
        for e, v in xs.items():
            k = e + s
            nv = field.add(acc.get(k, field.zero), field.mul(c, v))
            if nv:
                acc[k] = nv
            else:
                acc.pop(k, None)
        out.append(acc)
    return out
