"""Linear systems whose solutions glue to maps O(n-k) -> P^k(O(n)).

For each 1 <= r <= k the unknowns x_{0,r}, ..., x_{r,r} define the U_1
side of a map; the U_0 side has coefficients

    c^r_l = sum_j (-1)^j C(n-j, l-j) x_{j,r},       0 <= l <= k,

and the two sides agree on the overlap iff c^r_k = ... = c^r_{k-r+1} = 0
and c^r_{k-r} = 1.  Those r+1 conditions are the system A_r x = b_r.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    CertificateError,
    GluingFailed,
    InvalidParams,
    MissingSolution,
    UnexpectedSingular,
)
from .exactfield import FieldElement, FieldSpec, Raw, binomial, reduce
from .jetmatrices import JetParams, left_transition
from .laurent import QQ, LaurentMatrix, LaurentPoly, mat_mul
from .splitting import BirkhoffCertificate, SplittingType, birkhoff_split

UNIQUE = "unique"
NONE = "none"
UNDERDETERMINED = "underdetermined"


@dataclass(frozen=True)
class BinomialSystem:
    n: int
    k: int
    r: int
    A: tuple[tuple[FieldElement, ...], ...]
    b: tuple[FieldElement, ...]
    field: FieldSpec

    def integer_matrix(self) -> list[list[int]]:
        """A_r before reduction into the field."""
        return _integer_rows(self.n, self.k, self.r)


@dataclass(frozen=True)
class SystemSolution:
    system: BinomialSystem
    x: tuple[FieldElement, ...] | None
    status: str

    @property
    def r(self) -> int:
        return self.system.r


@dataclass(frozen=True)
class GluingCoefficients:
    """c[r][l] for every row r that was supplied (row 0 always present)."""

    n: int
    k: int
    c: dict[int, tuple[FieldElement, ...]] = dc_field(default_factory=dict)

    def row(self, r: int) -> tuple[FieldElement, ...]:
        return self.c[r]


def _check_nkr(n: int, k: int, r: int) -> None:
    if not 1 <= r <= k <= n:
        raise InvalidParams(f"need 1 <= r <= k <= n, got n={n}, k={k}, r={r}")


def _integer_rows(n: int, k: int, r: int) -> list[list[int]]:
    # row i is the condition on c^r_{k-i}
    return [
        [(-1) ** j * binomial(n - j, k - i - j) for j in range(r + 1)]
        for i in range(r + 1)
    ]


def build_system(n: int, k: int, r: int, field: FieldSpec = QQ) -> BinomialSystem:
    _check_nkr(n, k, r)
    A = tuple(tuple(reduce(a, field) for a in row) for row in _integer_rows(n, k, r))
    b = tuple(reduce(1 if i == r else 0, field) for i in range(r + 1))
    return BinomialSystem(n, k, r, A, b, field)


def _eliminate(rows: list[list[Raw]], field: FieldSpec) -> tuple[list[list[Raw]], list[int]]:
    """Reduced row echelon form, pivoting on the first nonzero entry."""
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        inv = field.inv(rows[top][col])
        rows[top] = [field.mul(v, inv) for v in rows[top]]
        for i in range(len(rows)):
            if i != top and rows[i][col]:
                fac = rows[i][col]
                rows[i] = [field.sub(a, field.mul(fac, b)) for a, b in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def solve_system(system: BinomialSystem, prefer_nonzero_last: bool = False) -> SystemSolution:
    """Exact Gauss-Jordan elimination; singular systems are a status, not an error.

    For an underdetermined system the free unknowns are set to zero, unless
    ``prefer_nonzero_last`` asks for a solution with x_{r,r} != 0 whenever
    one exists.
    """
    f = system.field
    size = system.r + 1
    aug = [[a.value for a in row] + [bi.value] for row, bi in zip(system.A, system.b)]
    red, pivots = _eliminate(aug, f)
    if size in pivots:
        return SystemSolution(system, None, NONE)
    free = {c: f.zero for c in range(size) if c not in pivots}
    last = size - 1
    if prefer_nonzero_last and free:
        if last in free:
            free[last] = f.one
        else:
            row = red[pivots.index(last)]
            if not row[size]:
                dep = next((c for c in free if row[c]), None)
                if dep is not None:
                    # x_last = -row[dep] * x_dep = 1
                    free[dep] = f.neg(f.inv(row[dep]))
    x = [f.zero] * size
    for c, v in free.items():
        x[c] = v
    for row, col in zip(red, pivots):
        acc = row[size]
        for c, v in free.items():
            if v and row[c]:
                acc = f.sub(acc, f.mul(row[c], v))
        x[col] = acc
    status = UNIQUE if not free else UNDERDETERMINED
    return SystemSolution(system, tuple(FieldElement(v, f) for v in x), status)


def c_row(n: int, k: int, x: Sequence[FieldElement], field: FieldSpec) -> tuple[FieldElement, ...]:
    out = []
    for l in range(k + 1):
        acc = reduce(0, field)
        for j, xj in enumerate(x):
            acc = acc + reduce((-1) ** j * binomial(n - j, l - j), field) * xj
        out.append(acc)
    return tuple(out)


def _gluing_ok(row: Sequence[FieldElement], k: int, r: int) -> bool:
    return all(row[l] == 0 for l in range(k - r + 1, k + 1)) and row[k - r] == 1


def gluing_coefficients(
    n: int, k: int, solutions: Iterable[SystemSolution], field: FieldSpec = QQ
) -> GluingCoefficients:
    """Gluing coefficients from the solved systems; row 0 is C(n, l).

    Any solution will do (unique or a chosen particular one).
    """
    c = {0: c_row(n, k, [reduce(1, field)], field)}
    for sol in solutions:
        r = sol.r
        if sol.system.n != n or sol.system.k != k:
            raise InvalidParams("solution belongs to a different (n, k)")
        if sol.x is None:
            raise MissingSolution(f"system r={r} has no solution")
        row = c_row(n, k, sol.x, field)
        if not _gluing_ok(row, k, r):
            raise GluingFailed(f"row r={r} violates the gluing conditions: {row}")
        c[r] = row
    return GluingCoefficients(n, k, c)


def assemble_phi(
    n: int, k: int, coeffs: GluingCoefficients, solutions: Iterable[SystemSolution]
) -> tuple[LaurentMatrix, LaurentMatrix]:
    """Chart matrices of the map (+)_r O(n-k) -> P^k(O(n)).

    phi0 has t^(k-r-l) c^r_l in row l, column r (U_0 side, over F[t]);
    phi1 has x_{j,r} t^(j-r) in row j, column r (U_1 side, over F[1/t]).
    """
    by_r = {sol.r: sol for sol in solutions}
    field = next(iter(coeffs.c[0])).field
    missing = [r for r in range(1, k + 1) if r not in by_r or r not in coeffs.c]
    if missing:
        raise MissingSolution(f"no solution for r in {missing}")
    zero = LaurentPoly.zero(field)
    phi0 = [[zero] * (k + 1) for _ in range(k + 1)]
    phi1 = [[zero] * (k + 1) for _ in range(k + 1)]
    for r in range(k + 1):
        for l, cl in enumerate(coeffs.c[r]):
            phi0[l][r] = LaurentPoly({k - r - l: cl}, field)
        xs = [reduce(1, field)] if r == 0 else by_r[r].x
        for j, xj in enumerate(xs):
            phi1[j][r] = LaurentPoly({j - r: xj}, field)
    return LaurentMatrix(phi0, field), LaurentMatrix(phi1, field)


def gluing_holds(n: int, k: int, phi0: LaurentMatrix, phi1: LaurentMatrix) -> bool:
    """[L] @ phi1 == t^(n-k) * phi0, i.e. phi0 and phi1 agree on the overlap."""
    L = left_transition(JetParams(n, k, phi0.field))
    return mat_mul(L, phi1) == phi0.shift(n - k)


ISOMORPHISM = "isomorphism"
NOT_ISOMORPHISM = "not_isomorphism"
UNSOLVABLE = "unsolvable"


@dataclass(frozen=True)
class SystemsOutcome:
    """What the linear systems say about P^k(O(n)) over one field.

    ``status`` is ``isomorphism`` when every system has a solution with
    x_{r,r} != 0, ``not_isomorphism`` when every system is solvable but
    some x_{r,r} is forced to vanish, and ``unsolvable`` when some system
    is inconsistent.
    """

    n: int
    k: int
    field: FieldSpec
    solutions: tuple[SystemSolution, ...]
    status: str
    coeffs: GluingCoefficients | None = None
    phi0: LaurentMatrix | None = None
    phi1: LaurentMatrix | None = None

    def certificate(self) -> BirkhoffCertificate | None:
        """P = phi0^-1, Q = phi1, D = t^(n-k) I, valid only for an isomorphism."""
        if self.status != ISOMORPHISM:
            return None
        D = LaurentMatrix.monomial_diagonal([self.n - self.k] * (self.k + 1), self.field)
        return BirkhoffCertificate(self.phi0.inverse(), D, self.phi1)


def split_via_systems(n: int, k: int, field: FieldSpec = QQ) -> SystemsOutcome:
    JetParams(n, k, field)
    sols = tuple(
        solve_system(build_system(n, k, r, field), prefer_nonzero_last=True)
        for r in range(1, k + 1)
    )
    if any(s.status == NONE for s in sols):
        return SystemsOutcome(n, k, field, sols, UNSOLVABLE)
    coeffs = gluing_coefficients(n, k, sols, field)
    phi0, phi1 = assemble_phi(n, k, coeffs, sols)
    if not gluing_holds(n, k, phi0, phi1):
        raise GluingFailed(f"phi0 and phi1 do not agree on the overlap for n={n}, k={k}")
    diag_nonzero = all(s.x[s.r] for s in sols)
    status = ISOMORPHISM if diag_nonzero else NOT_ISOMORPHISM
    return SystemsOutcome(n, k, field, sols, status, coeffs, phi0, phi1)


def char0_split(n: int, k: int) -> SplittingType:
    """Splitting type over Q from the linear systems, cross-checked by factorization."""
    out = split_via_systems(n, k, QQ)
    bad = [s.r for s in out.solutions if s.status != UNIQUE]
    if bad:
        raise UnexpectedSingular(f"A_r singular over Q for r in {bad} (n={n}, k={k})")
    if out.status != ISOMORPHISM:
        raise UnexpectedSingular(f"some x_(r,r) vanishes over Q (n={n}, k={k})")
    result = SplittingType((n - k,) * (k + 1))
    factored, _ = birkhoff_split(left_transition(JetParams(n, k, QQ)))
    if factored != result:
        raise CertificateError(f"systems give {result}, factorization gives {factored}")
    return result


def det_formula_check(n: int, k: int, r: int) -> tuple[Fraction, Fraction]:
    """(det A_r by exact elimination over Q, prod_l C(n-l, k-r) / C(k-l, r-l))."""
    _check_nkr(n, k, r)
    rows = [[Fraction(a) for a in row] for row in _integer_rows(n, k, r)]
    det = Fraction(1)
    size = r + 1
    for col in range(size):
        piv = next((i for i in range(col, size) if rows[i][col]), None)
        if piv is None:
            det = Fraction(0)
            break
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        for i in range(col + 1, size):
            fac = rows[i][col] / rows[col][col]
            if fac:
                rows[i] = [a - fac * b for a, b in zip(rows[i], rows[col])]
    product = Fraction(1)
    for l in range(r + 1):
        den = binomial(k - l, r - l)
        if den == 0:
            raise UnexpectedSingular(f"C({k - l}, {r - l}) vanished")
        product *= Fraction(binomial(n - l, k - r), den)
    return det, product


def binomial_lemma_check(n: int, k: int, a: int, b: int) -> bool:
    """Exact check of the binomial reduction identity used for det A_r.

    The one-index binomials C(a-1, 1) and C(k-b+1, 1) are read as the
    integers a-1 and k-b+1, so C(0, 1) = 0.
    """
    if min(n, k, a, b) < 0:
        raise InvalidParams("n, k, a, b must be non-negative")
    if a > n + 1:
        raise InvalidParams("a must be at most n + 1")
    den = k - b + 1
    if den == 0:
        raise InvalidParams("k - b + 1 must be nonzero")
    top = n - a + 1
    lhs = binomial(top, k - a - b + 2) - Fraction(n - k + b, den) * binomial(top, k - a - b + 1)
    rhs = Fraction((a - 1) * binomial(top, k - a - b + 2), den)
    return lhs == rhs
