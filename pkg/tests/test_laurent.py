import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jetsplit.errors import FieldMismatch, ShapeMismatch
from jetsplit.exactfield import FieldSpec
from jetsplit.jetmatrices import JetParams, left_transition, p1_base_change
from jetsplit.laurent import (
    QQ,
    LaurentMatrix,
    LaurentPoly,
    PolySide,
    is_unit,
    mat_det,
    mat_inverse,
    mat_mul,
    random_unimodular,
    side_check,
    unit_inverse,
)

F2, F5 = FieldSpec(2), FieldSpec(5)
t = LaurentPoly.monomial(1, 1)


def P(terms, f=QQ):
    return LaurentPoly(terms, f)


def rand_poly(rng, f, lo=-3, hi=3, density=0.5):
    terms = {}
    for e in range(lo, hi + 1):
        if rng.random() < density:
            terms[e] = rng.randint(-4, 4)
    return LaurentPoly(terms, f)


def rand_matrix(rng, r, f, **kw):
    return LaurentMatrix([[rand_poly(rng, f, **kw) for _ in range(r)] for _ in range(r)], f)


def leibniz_det(m):
    r = m.rank
    acc = LaurentPoly.zero(m.field)
    for perm in itertools.permutations(range(r)):
        inv = sum(1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j])
        term = LaurentPoly.const(-1 if inv % 2 else 1, m.field)
        for i in range(r):
            term = term * m[i, perm[i]]
        acc = acc + term
    return acc


# --- polynomial examples ---

def test_difference_of_squares():
    assert (t - 1) * (t + 1) == P({2: 1, 0: -1})


def test_shift_example():
    assert P({2: 3}).shift(-2) == P({0: 3})


def test_cancellation():
    s = P({1: 1, -1: 1}) + P({-1: -1})
    assert s == t
    assert s.support == [1]


def test_canonical_text():
    p = P({-2: -1, 0: 3, 1: 1})
    assert str(p) == "-1*t^-2 + 3 + 1*t^1"
    assert LaurentPoly.parse(str(p)) == p
    assert str(LaurentPoly.zero()) == "0"


@pytest.mark.parametrize("a,want", [(P({4: -1}), True), (P({2: 1, 0: 1}), False), (LaurentPoly.zero(), False)])
def test_is_unit_examples(a, want):
    assert is_unit(a) is want


def test_low_high_on_zero():
    z = LaurentPoly.zero()
    assert z.low is None and z.high is None and z.support == []


def test_divmod_in_polynomial_ring():
    a = P({3: 1, 0: -1})
    b = P({1: 1, 0: -1})
    q, rem = a.divmod_poly(b)
    assert q == P({2: 1, 1: 1, 0: 1}) and rem.is_zero()


def test_poly_field_mismatch():
    with pytest.raises(FieldMismatch):
        P({0: 1}, F2) + P({0: 1}, F5)


# --- matrix examples ---

def test_identity_law():
    rng = random.Random(1)
    m = rand_matrix(rng, 3, QQ)
    assert LaurentMatrix.identity(3) @ m == m == m @ LaurentMatrix.identity(3)


def test_section4_sandwich_n3():
    a, b = p1_base_change(3)
    prod = mat_mul(mat_mul(a, left_transition(JetParams(3, 1))), b)
    assert prod == LaurentMatrix.monomial_diagonal([2, 2])


def test_diagonal_product():
    assert LaurentMatrix.monomial_diagonal([1, 0]) @ LaurentMatrix.monomial_diagonal([0, 1]) == LaurentMatrix.monomial_diagonal([1, 1])


def test_mat_mul_errors():
    with pytest.raises(ShapeMismatch):
        LaurentMatrix.identity(2) @ LaurentMatrix.identity(3)
    with pytest.raises(FieldMismatch):
        LaurentMatrix.identity(2, F2) @ LaurentMatrix.identity(2, F5)


def test_det_examples():
    assert mat_det(left_transition(JetParams(3, 1))) == P({4: -1})
    for r in range(1, 7):
        assert mat_det(LaurentMatrix.identity(r)) == LaurentPoly.one()
    d = mat_det(left_transition(JetParams(2, 2)))
    assert is_unit(d) and d.support == [0] and abs(d.terms[0]) == 1


def test_side_check_examples():
    assert side_check(LaurentMatrix([[P({2: 1}), 1], [0, 3]]), PolySide.PLUS)
    assert not side_check(LaurentMatrix([[P({-1: 1})]]), PolySide.PLUS)
    assert side_check(LaurentMatrix([[P({0: 1, -2: 1})]]), PolySide.MINUS)


def test_pretty_form():
    m = left_transition(JetParams(3, 1))
    assert m.pretty() == "[[t^3, 0],[3*t^2, -t^1]]"
    assert LaurentMatrix.from_json(m.to_json()) == m


# --- random unimodular generator ---

@pytest.mark.parametrize("side", list(PolySide))
def test_rank_one_unimodular_is_constant(side):
    m = random_unimodular(1, side, 3, seed=7)
    assert m.rank == 1 and m[0, 0].support == [0]


@pytest.mark.parametrize("f", [QQ, F2, F5])
@pytest.mark.parametrize("side", list(PolySide))
def test_unimodular_contract(f, side):
    for seed in range(30):
        r = 1 + seed % 5
        m = random_unimodular(r, side, 3, seed, f)
        d = mat_det(m)
        assert is_unit(d) and d.support == [0]
        assert side_check(m, side)
        assert side_check(mat_inverse(m), side)


def test_unimodular_deterministic():
    a = random_unimodular(4, PolySide.MINUS, 2, seed=99, field=F5)
    b = random_unimodular(4, PolySide.MINUS, 2, seed=99, field=F5)
    assert a == b


# --- properties ---

@pytest.mark.parametrize("f", [QQ, F2, F5])
def test_det_multiplicative(f):
    rng = random.Random(2024 + f.characteristic)
    for trial in range(200):
        r = 2 + trial % 2
        a, b = rand_matrix(rng, r, f), rand_matrix(rng, r, f)
        assert mat_det(a @ b) == mat_det(a) * mat_det(b)


@pytest.mark.parametrize("f", [QQ, F5])
def test_elimination_det_matches_leibniz(f):
    rng = random.Random(5)
    for r in (5, 6):
        for _ in range(4):
            m = rand_matrix(rng, r, f, lo=-2, hi=2, density=0.4)
            assert mat_det(m) == leibniz_det(m)


@pytest.mark.parametrize("f", [QQ, F2, F5])
def test_associativity(f):
    rng = random.Random(11)
    for _ in range(40):
        a, b, c = (rand_matrix(rng, 3, f) for _ in range(3))
        assert (a @ b) @ c == a @ (b @ c)


@pytest.mark.parametrize("f", [QQ, F5])
def test_inverse_of_sandwich(f):
    for seed in range(10):
        u = random_unimodular(3, PolySide.PLUS, 2, seed, f)
        v = random_unimodular(3, PolySide.MINUS, 2, seed + 100, f)
        m = u @ LaurentMatrix.monomial_diagonal([3, -1, 0], f) @ v
        assert m @ m.inverse() == LaurentMatrix.identity(3, f)


poly_terms = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=6)
fields = st.sampled_from([QQ, F2, F5])


@given(poly_terms, poly_terms, fields)
def test_normal_form_kept(a, b, f):
    x, y = LaurentPoly(a, f), LaurentPoly(b, f)
    for z in (x + y, x - y, x * y, -x, x.shift(3), x.scale(f.raw(2)) if f.characteristic != 2 else x):
        assert all(c != 0 for c in z.terms.values())
        assert z.support == sorted(z.terms)


@given(st.integers(-5, 5).filter(bool), st.integers(-20, 20), fields)
def test_unit_has_inverse(c, e, f):
    a = LaurentPoly({e: c}, f)
    if a.is_zero():
        return
    assert is_unit(a)
    assert a * unit_inverse(a) == LaurentPoly.one(f)


@given(poly_terms)
def test_non_monomials_have_no_laurent_inverse(terms):
    a = LaurentPoly(terms)
    if len(a.terms) < 2:
        return
    assert not is_unit(a)
    # the product with any monomial keeps >= 2 terms, so never equals 1
    assert len((a * LaurentPoly({-a.low: Fraction(1)})).terms) >= 2


@given(poly_terms, fields)
def test_text_roundtrip(terms, f):
    a = LaurentPoly(terms, f)
    assert LaurentPoly.parse(str(a), f) == a
