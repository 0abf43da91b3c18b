"""Splitting types of vector bundles on P^1 given by a transition matrix.

Two independent routes:

* :func:`birkhoff_split` factors ``P @ M @ Q = diag(t^a_1, ..., t^a_r)`` with
  P invertible over F[t] and Q invertible over F[1/t], and returns the
  factors as a checkable certificate.
* :func:`oracle_split` only counts global sections h^0(E(m)) by linear
  algebra over F and reads the degrees off the first differences.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import CertificateError, InvalidParams, NotInvertible, ShapeMismatch, WindowTooSmall
from .exactfield import FieldSpec, Raw
from .laurent import (
    LaurentMatrix,
    LaurentPoly,
    PolySide,
    is_unit,
    mat_det,
    mat_inverse,
    mat_mul,
    side_check,
)

MAX_ROUNDS = 10_000


@dataclass(frozen=True)
class SplittingType:
    """Twist degrees a_1 >= ... >= a_r of a splitting O(a_1) + ... + O(a_r)."""

    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        degs = tuple(int(a) for a in self.degrees)
        if list(degs) != sorted(degs, reverse=True):
            raise InvalidParams(f"degrees must be sorted descending: {degs}")
        object.__setattr__(self, "degrees", degs)

    @classmethod
    def of(cls, degrees: Iterable[int]) -> SplittingType:
        return cls(tuple(sorted(degrees, reverse=True)))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    def multiplicities(self) -> list[list[int]]:
        counts = Counter(self.degrees)
        return [[a, counts[a]] for a in sorted(counts, reverse=True)]

    def __str__(self) -> str:
        return "+".join(f"O({a})" for a in self.degrees)


@dataclass(frozen=True)
class BirkhoffCertificate:
    P: LaurentMatrix
    D: LaurentMatrix
    Q: LaurentMatrix


def _unit_exponent(det: LaurentPoly) -> int:
    if not is_unit(det):
        raise NotInvertible(f"determinant {det} is not a unit of F[t, 1/t]")
    return det.low


# -- Birkhoff factorization ---------------------------------------------


class _Work:
    """Working matrix W together with the accumulated row (P) and column (Q) operations."""

    def __init__(self, m: LaurentMatrix):
        self.field = m.field
        self.r = m.rank
        self.W = [list(row) for row in m.rows]
        one, zero = LaurentPoly.one(m.field), LaurentPoly.zero(m.field)
        self.P = [[one if i == j else zero for j in range(self.r)] for i in range(self.r)]
        self.Q = [[one if i == j else zero for j in range(self.r)] for i in range(self.r)]
        self.shift = 0

    def row_addmul(self, dst: int, src: int, q: LaurentPoly) -> None:
        # row_dst += q * row_src, q in F[t]
        for mat in (self.W, self.P):
            rd, rs = mat[dst], mat[src]
            for c in range(self.r):
                if rs[c].terms:
                    rd[c] = rd[c] + q * rs[c]

    def row_swap(self, a: int, b: int) -> None:
        for mat in (self.W, self.P):
            mat[a], mat[b] = mat[b], mat[a]

    def row_scale(self, a: int, c: Raw) -> None:
        for mat in (self.W, self.P):
            mat[a] = [x.scale(c) for x in mat[a]]

    def make_primitive(self, a: int) -> None:
        # Over Q, rescale row a of W to coprime integer coefficients; this
        # keeps Euclidean remainders from swelling and is a unimodular step.
        if self.field.characteristic:
            return
        coeffs = [c for x in self.W[a] for c in x.terms.values()]
        if not coeffs:
            return
        num = 0
        den = 1
        for c in coeffs:
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        content = Fraction(num, den)
        if content != 1:
            self.row_scale(a, 1 / content)

    def col_addmul(self, dst: int, src: int, q: LaurentPoly) -> None:
        # col_dst += q * col_src, q in F[1/t]
        for mat in (self.W, self.Q):
            for row in mat:
                if row[src].terms:
                    row[dst] = row[dst] + row[src] * q

    def normalize_shift(self) -> None:
        lows = [x.low for row in self.W for x in row if x.terms]
        s = -min(lows)
        if s:
            self.W = [[x.shift(s) for x in row] for row in self.W]
            self.shift += s

    def triangularize(self) -> list[int]:
        """Row-reduce over F[t] to upper triangular form with monic monomial diagonal."""
        W, r, f = self.W, self.r, self.field
        for c in range(r):
            while True:
                cand = [i for i in range(c, r) if W[i][c].terms]
                if not cand:
                    raise NotInvertible("matrix is singular")
                piv = min(cand, key=lambda i: (W[i][c].high, i))
                if piv != c:
                    self.row_swap(piv, c)
                others = [i for i in range(c + 1, r) if W[i][c].terms]
                if not others:
                    break
                for i in others:
                    q, _ = W[i][c].divmod_poly(W[c][c])
                    if q.terms:
                        self.row_addmul(i, c, -q)
                        self.make_primitive(i)
        diag = []
        for c in range(r):
            x = W[c][c]
            if not x.is_monomial():
                raise NotInvertible(f"diagonal entry {x} is not a monomial")
            (e, coeff), = x.terms.items()
            if coeff != f.one:
                self.row_scale(c, f.inv(coeff))
            diag.append(e)
        return diag

    def clean(self, d: list[int]) -> tuple[int, int, int, Raw] | None:
        """Clear the strictly upper part column by column.

        Terms of entry (i, j) with exponent >= d_j go by a row operation
        with row j, terms with exponent <= d_i by a column operation with
        (already clean) column i.  Returns the obstruction (i, j, e, coeff)
        if some term with d_i < e < d_j survives, else None.
        """
        W, r = self.W, self.r
        for j in range(1, r):
            stuck = []
            for i in range(j):
                h = W[i][j]
                if not h.terms:
                    continue
                high = h.part(lo=d[j])
                if high.terms:
                    self.row_addmul(i, j, -high.shift(-d[j]))
                low = W[i][j].part(hi=d[i])
                if low.terms:
                    self.col_addmul(j, i, -low.shift(-d[i]))
                if W[i][j].terms:
                    stuck.append(i)
            if stuck:
                # the row nearest the diagonal keeps the rebalancing local
                i = max(stuck)
                h = W[i][j]
                e = h.low
                return i, j, e, h.terms[e]
        return None

    def rebalance(self, i: int, j: int, e: int, coeff: Raw, d: list[int]) -> None:
        # col_i -= coeff^-1 t^(d_i - e) col_j; d_i - e < 0 so this is a minus-side op.
        f = self.field
        q = LaurentPoly._make({d[i] - e: f.neg(f.inv(coeff))}, f)
        self.col_addmul(i, j, q)


def birkhoff_split(m: LaurentMatrix) -> tuple[SplittingType, BirkhoffCertificate]:
    """Splitting type of the bundle with transition matrix ``m``, with certificate.

    Raises :class:`NotInvertible` unless det(m) is a unit, and
    :class:`CertificateError` if the produced factorization fails its own
    exact check (never expected).
    """
    _unit_exponent(mat_det(m))
    work = _Work(m)
    for _ in range(MAX_ROUNDS):
        work.normalize_shift()
        d = work.triangularize()
        obstruction = work.clean(d)
        if obstruction is None:
            break
        work.rebalance(*obstruction, d)
    else:
        raise CertificateError("Birkhoff reduction did not converge")

    degrees = [e - work.shift for e in d]
    order = sorted(range(work.r), key=lambda i: (-degrees[i], i))
    field = m.field
    P = LaurentMatrix._make([work.P[i] for i in order], field)
    Q = LaurentMatrix._make([[row[i] for i in order] for row in work.Q], field)
    sorted_degs = [degrees[i] for i in order]
    D = LaurentMatrix.monomial_diagonal(sorted_degs, field)
    cert = BirkhoffCertificate(P, D, Q)
    if not verify_certificate(m, cert):
        raise CertificateError("computed Birkhoff factorization failed verification")
    return SplittingType(tuple(sorted_degs)), cert


def _is_constant_unit(x: LaurentPoly) -> bool:
    return is_unit(x) and x.low == 0


def verify_certificate(m: LaurentMatrix, cert: BirkhoffCertificate) -> bool:
    """Exact check of P @ M @ Q == D with the side and unimodularity conditions."""
    P, D, Q = cert.P, cert.D, cert.Q
    for x in (P, D, Q):
        if x.rank != m.rank or x.field != m.field:
            raise ShapeMismatch("certificate does not match the matrix")
    if not D.is_diagonal():
        return False
    one = m.field.one
    for i in range(D.rank):
        x = D[i, i]
        if not x.is_monomial() or x.terms[x.low] != one:
            return False
    if not side_check(P, PolySide.PLUS) or not side_check(Q, PolySide.MINUS):
        return False
    if not _is_constant_unit(mat_det(P)) or not _is_constant_unit(mat_det(Q)):
        return False
    return mat_mul(mat_mul(P, m), Q) == D


# -- global sections oracle ---------------------------------------------


def _sparse_rank(rows: list[dict[int, Raw]], field: FieldSpec) -> int:
    """Rank of a sparse matrix over ``field``; rows are consumed."""
    p = field.characteristic
    pivots: dict[int, dict[int, Raw]] = {}
    for row in rows:
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                inv = field.inv(row[col])
                pivots[col] = {c: field.mul(v, inv) for c, v in row.items()}
                break
            factor = row[col]
            for c, v in piv.items():
                if p:
                    nv = (row.get(c, 0) - factor * v) % p
                else:
                    nv = row.get(c, 0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def _h0(m: LaurentMatrix, twist: int, window: int) -> int:
    # Unknowns: coefficient of t^-j in component c of g, 0 <= j <= window.
    # Constraints: every negative-exponent coefficient of t^twist * M g vanishes.
    r = m.rank
    width = window + 1
    cons: dict[tuple[int, int], dict[int, Raw]] = {}
    f = m.field
    for rho in range(r):
        for c in range(r):
            entry = m[rho, c]
            for ex, val in entry.terms.items():
                base = twist + ex
                # j > base makes the exponent base - j negative
                for j in range(max(0, base + 1), width):
                    row = cons.setdefault((rho, base - j), {})
                    col = c * width + j
                    nv = f.add(row.get(col, f.zero), val)
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
    rank = _sparse_rank([row for row in cons.values() if row], f)
    return r * width - rank


def _inverse_low(m: LaurentMatrix) -> tuple[int, int]:
    inv = mat_inverse(m)
    return inv.min_exponent(), inv.max_exponent()


def h0_dimension(m: LaurentMatrix, twist: int, window: int | None = None) -> int:
    """dim over F of the global sections of E(twist), E given by ``m``.

    Sections are pairs (f, g), f over F[t], g over F[1/t], with
    f = t^twist M g.  Any section has g = t^-twist M^-1 f, so the powers of
    1/t in g are bounded by twist - (lowest exponent of M^-1); that bound
    is the default coefficient window.  A caller-supplied ``window``
    smaller than the bound raises :class:`WindowTooSmall`.
    """
    _unit_exponent(mat_det(m))
    lo_inv, _ = _inverse_low(m)
    need = twist - lo_inv
    if window is not None and window < need:
        raise WindowTooSmall(f"window {window} < required {need}")
    if need < 0:
        return 0
    return _h0(m, twist, need if window is None else window)


def oracle_bound(m: LaurentMatrix) -> int:
    """Outer twist bound B = rank * max|exponent| + |det exponent| + 2."""
    d = _unit_exponent(mat_det(m))
    maxabs = max(abs(e) for x in m.entries() for e in x.terms)
    return m.rank * maxabs + abs(d) + 2


def oracle_split(m: LaurentMatrix, bound: int | None = None) -> SplittingType:
    """Splitting type from h^0(E(t)) - h^0(E(t-1)) = #{i : a_i >= -t}.

    The scan starts below -max exponent of M (no sections: f would need
    only negative powers) and must reach slope rank no later than the
    max exponent of M^-1 (every a_i >= -that, by duality).  Both ends are
    checked and must lie inside [-bound, bound].
    """
    r = m.rank
    B = oracle_bound(m) if bound is None else bound
    lo_inv, hi_inv = _inverse_low(m)
    hi = m.max_exponent()
    start, stop = -hi - 1, hi_inv
    if start < -B or stop > B:
        raise WindowTooSmall(f"scan [{start}, {stop}] exceeds bound {B}")

    def h(twist: int) -> int:
        need = twist - lo_inv
        return 0 if need < 0 else _h0(m, twist, need)

    prev_h = h(start)
    if prev_h != 0 or h(start - 1) != 0:
        raise WindowTooSmall("h0 does not vanish at the bottom of the scan")
    prev_slope = 0
    degrees: list[int] = []
    twist = start
    while prev_slope < r:
        twist += 1
        if twist > stop:
            raise WindowTooSmall("slope did not saturate at rank")
        cur = h(twist)
        slope = cur - prev_h
        if slope < prev_slope or slope > r:
            raise WindowTooSmall(f"non-monotone slope {slope} at twist {twist}")
        degrees.extend([-twist] * (slope - prev_slope))
        prev_h, prev_slope = cur, slope
    return SplittingType(tuple(degrees))
