"""Self-verification suites run by ``jetsplit verify``.

Each suite yields :class:`Check` records.  Expected values are written from
the closed-form statements (never recomputed through the code under test),
so a corrupted binomial table or transition matrix shows up as a failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import binomsys
from .exactfield import FieldSpec
from .jetmatrices import JetParams, left_transition, right_transition, p1_base_change
from .laurent import LaurentMatrix, LaurentPoly, PolySide, is_unit, mat_det, random_unimodular
from .splitting import SplittingType, birkhoff_split, oracle_split, verify_certificate


@dataclass(frozen=True)
class Check:
    label: str
    passed: bool
    detail: str = ""


def _split_checked(m: LaurentMatrix) -> tuple[SplittingType, str]:
    """Split with both routes; returns the type and a failure reason ('' if fine)."""
    st, cert = birkhoff_split(m)
    if not verify_certificate(m, cert):
        return st, "certificate rejected"
    d = mat_det(m)
    if st.total != d.low:
        return st, f"degree sum {st.total} != det exponent {d.low}"
    return st, ""


def suite_transition() -> Iterator[Check]:
    bad = []
    for p in (0, 2, 3, 5):
        f = FieldSpec(p)
        for n in range(1, 13):
            for k in range(1, n + 1):
                d = mat_det(left_transition(JetParams(n, k, f)))
                ok = is_unit(d) and d.low == (n - k) * (k + 1)
                ok = ok and d.terms[d.low] in (f.one, f.raw(-1))
                if not ok:
                    bad.append((n, k, p))
    yield Check("transition determinant is +-t^((n-k)(k+1)), k<=n<=12", not bad, str(bad[:5]))

    bad = []
    for p in (0, 2, 3, 5):
        f = FieldSpec(p)
        for n in range(1, 21):
            expect = LaurentMatrix(
                [
                    [LaurentPoly({n: 1}, f), 0],
                    [LaurentPoly({n - 1: n}, f), LaurentPoly({n - 2: -1}, f)],
                ],
                f,
            )
            if left_transition(JetParams(n, 1, f)) != expect:
                bad.append((n, p))
    yield Check("P^1(O(n)) transition is [[t^n,0],[n t^(n-1),-t^(n-2)]], n<=20", not bad, str(bad[:5]))

    bad = []
    for p in (0, 2, 3, 5, 7):
        f = FieldSpec(p)
        for n in range(1, 21):
            if p and n % p == 0:
                continue
            a, b = p1_base_change(n, f)
            prod = a @ left_transition(JetParams(n, 1, f)) @ b
            if prod != LaurentMatrix.monomial_diagonal([n - 1, n - 1], f):
                bad.append((n, p))
    yield Check("base change diagonalizes P^1(O(n)) to diag(t^(n-1), t^(n-1))", not bad, str(bad[:5]))


def suite_split(seed: int = 0, trials: int = 20) -> Iterator[Check]:
    bad = []
    for p in (0, 2, 3, 5, 7, 11):
        f = FieldSpec(p)
        for n in range(1, 31):
            divides = p != 0 and n % p == 0
            want_left = (n, n - 2) if divides else (n - 1, n - 1)
            left, why = _split_checked(left_transition(JetParams(n, 1, f)))
            right, why_r = _split_checked(right_transition(n, f))
            if left.degrees != want_left or right.degrees != (n, n - 2) or why or why_r:
                bad.append((n, p, str(left), str(right), why or why_r))
    yield Check("P^1(O(n)) left/right splitting, n<=30, chars 0,2,3,5,7,11", not bad, str(bad[:3]))

    bad = []
    rng = random.Random(seed)
    for p in (0, 2, 5):
        f = FieldSpec(p)
        for _ in range(trials):
            r = rng.randint(1, 4)
            degs = [rng.randint(-5, 5) for _ in range(r)]
            u = random_unimodular(r, PolySide.PLUS, 2, rng.randrange(1 << 30), f)
            v = random_unimodular(r, PolySide.MINUS, 2, rng.randrange(1 << 30), f)
            m = u @ LaurentMatrix.monomial_diagonal(degs, f) @ v
            st, why = _split_checked(m)
            if why or st != SplittingType.of(degs) or oracle_split(m) != st:
                bad.append((p, degs, str(st), why))
    yield Check(f"random unimodular sandwiches recovered ({trials}/char, seed {seed})", not bad, str(bad[:3]))

    bad = []
    for p in (0, 2, 3, 5):
        f = FieldSpec(p)
        for k in range(1, 5):
            for n in range(k, 9):
                m = left_transition(JetParams(n, k, f))
                st, why = _split_checked(m)
                if why or oracle_split(m) != st:
                    bad.append((n, k, p, why))
    yield Check("factorization and section-count oracle agree, k<=4, n<=8", not bad, str(bad[:3]))


def suite_systems() -> Iterator[Check]:
    bad = []
    for n in range(1, 11):
        for k in range(1, n + 1):
            try:
                st = binomsys.char0_split(n, k)
            except Exception as exc:  # any failure counts against the check
                bad.append((n, k, repr(exc)))
                continue
            if st.degrees != (n - k,) * (k + 1):
                bad.append((n, k, str(st)))
    yield Check("char 0: P^k(O(n)) = (k+1) O(n-k) via linear systems, k<=n<=10", not bad, str(bad[:3]))

    bad = []
    for n in range(1, 11):
        for k in range(1, n + 1):
            for r in range(1, k + 1):
                det, prod = binomsys.det_formula_check(n, k, r)
                if abs(det) != prod:
                    bad.append((n, k, r, str(det), str(prod)))
    yield Check("|A_r| = +-prod C(n-l,k-r)/C(k-l,r-l), r<=k<=n<=10", not bad, str(bad[:3]))


def suite_lemmas() -> Iterator[Check]:
    bad = []
    for n in range(0, 13):
        for k in range(0, n + 1):
            for a in range(0, k + 1):
                for b in range(0, k + 1):
                    if k - b + 1 > 0 and not binomsys.binomial_lemma_check(n, k, a, b):
                        bad.append((n, k, a, b))
    yield Check("binomial reduction identity, a,b<=k<=n<=12", not bad, str(bad[:5]))


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "transition": suite_transition,
    "split": suite_split,
    "systems": suite_systems,
    "lemmas": suite_lemmas,
}


def run_suites(names: list[str], seed: int = 0) -> Iterator[tuple[str, Check]]:
    for name in names:
        suite = SUITES[name]
        checks = suite(seed=seed) if name == "split" else suite()
        try:
            for chk in checks:
                yield name, chk
        except Exception as exc:  # a crash inside a suite is a failed check, not a traceback
            yield name, Check(f"{name} suite aborted", False, repr(exc))
