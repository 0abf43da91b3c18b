import random

import pytest
from hypothesis import given, settings, strategies as st

from jetsplit.errors import InvalidParams, NotInvertible, WindowTooSmall
from jetsplit.exactfield import FieldSpec
from jetsplit.jetmatrices import JetParams, left_transition, right_transition, p1_base_change
from jetsplit.laurent import QQ, LaurentMatrix, LaurentPoly, PolySide, mat_det, random_unimodular, side_check
from jetsplit.splitting import (
    BirkhoffCertificate,
    SplittingType,
    birkhoff_split,
    h0_dimension,
    oracle_split,
    verify_certificate,
)

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)


def sandwich(degs, f, seed, bound=2):
    rng = random.Random(seed)
    u = random_unimodular(len(degs), PolySide.PLUS, bound, rng.randrange(1 << 30), f)
    v = random_unimodular(len(degs), PolySide.MINUS, bound, rng.randrange(1 << 30), f)
    return u @ LaurentMatrix.monomial_diagonal(degs, f) @ v


def h0_closed_form(degs, m):
    return sum(max(0, a + m + 1) for a in degs)


# --- SplittingType ---

def test_splitting_type_basics():
    st_ = SplittingType.of([2, 4, 2])
    assert st_.degrees == (4, 2, 2)
    assert str(st_) == "O(4)+O(2)+O(2)"
    assert st_.multiplicities() == [[4, 1], [2, 2]]
    assert st_.total == 8 and st_.rank == 3
    with pytest.raises(InvalidParams):
        SplittingType((1, 2))


# --- frozen examples ---

@pytest.mark.parametrize("c,a", [(1, 0), (-3, 7), (2, -4)])
def test_one_by_one(c, a):
    st_, cert = birkhoff_split(LaurentMatrix([[LaurentPoly({a: c})]]))
    assert st_.degrees == (a,)
    assert verify_certificate(LaurentMatrix([[LaurentPoly({a: c})]]), cert)


@pytest.mark.parametrize(
    "m,want",
    [
        (left_transition(JetParams(3, 1)), (2, 2)),
        (left_transition(JetParams(4, 1, F2)), (4, 2)),
        (right_transition(4), (4, 2)),
        (right_transition(4, F3), (4, 2)),
    ],
)
def test_transition_examples(m, want):
    st_, cert = birkhoff_split(m)
    assert st_.degrees == want
    assert verify_certificate(m, cert)


def test_hand_certificate_for_k1():
    # the explicit k = 1 base change is itself a valid certificate
    a, b = p1_base_change(3)
    cert = BirkhoffCertificate(a, LaurentMatrix.monomial_diagonal([2, 2]), b)
    assert verify_certificate(left_transition(JetParams(3, 1)), cert)


def test_tampered_certificate_rejected():
    m = left_transition(JetParams(5, 2, F5))
    _, cert = birkhoff_split(m)
    assert verify_certificate(m, cert)
    rows = [list(r) for r in cert.P.rows]
    rows[0][0] = rows[0][0] + 1
    bad = BirkhoffCertificate(LaurentMatrix(rows, F5), cert.D, cert.Q)
    assert not verify_certificate(m, bad)


def test_certificate_sides_enforced():
    m = LaurentMatrix.monomial_diagonal([1, 0])
    # P = diag(1/t, 1) would give identity but is not over F[t]
    cheat = BirkhoffCertificate(LaurentMatrix.monomial_diagonal([-1, 0]), LaurentMatrix.identity(2), LaurentMatrix.identity(2))
    assert not verify_certificate(m, cheat)


def test_non_unit_det_refused():
    m = LaurentMatrix([[LaurentPoly({0: 1, 1: 1}), 0], [0, 1]])
    with pytest.raises(NotInvertible):
        birkhoff_split(m)
    with pytest.raises(NotInvertible):
        oracle_split(m)
    with pytest.raises(NotInvertible):
        h0_dimension(m, 0)


def test_h0_examples():
    d = LaurentMatrix.monomial_diagonal([2, -1])
    assert h0_dimension(d, 0) == 3
    assert h0_dimension(d, 1) == 5
    assert h0_dimension(left_transition(JetParams(4, 1, F2)), -4) == 1


def test_h0_window_too_small():
    d = LaurentMatrix.monomial_diagonal([2, -1])
    assert h0_dimension(d, 1, window=10) == 5
    with pytest.raises(WindowTooSmall):
        h0_dimension(d, 1, window=0)


def test_oracle_examples():
    assert oracle_split(LaurentMatrix.monomial_diagonal([3, 3])).degrees == (3, 3)
    for f in (QQ, F2, F5):
        assert oracle_split(sandwich([5, -2], f, seed=3)).degrees == (5, -2)


def test_oracle_bound_too_small():
    with pytest.raises(WindowTooSmall):
        oracle_split(LaurentMatrix.monomial_diagonal([6, -6]), bound=3)


# --- properties ---

@pytest.mark.parametrize("f", [QQ, F2, F5])
def test_oracle_agrees_on_small_transition_matrices(f):
    for k in range(1, 4):
        for n in range(k, 7):
            m = left_transition(JetParams(n, k, f))
            st_, cert = birkhoff_split(m)
            assert oracle_split(m) == st_
            assert st_.total == mat_det(m).low


@pytest.mark.parametrize("f", [QQ, F2, F5])
def test_unimodular_invariance(f):
    bases = [left_transition(JetParams(n, k, f)) for n, k in [(3, 1), (4, 1), (4, 2), (5, 3)]]
    rng = random.Random(77)
    for base in bases:
        want = birkhoff_split(base)[0]
        for _ in range(25):
            r = base.rank
            u = random_unimodular(r, PolySide.PLUS, 2, rng.randrange(1 << 30), f)
            v = random_unimodular(r, PolySide.MINUS, 2, rng.randrange(1 << 30), f)
            m = u @ base @ v
            st_, cert = birkhoff_split(m)
            assert st_ == want and verify_certificate(m, cert)


DEGS = st.lists(st.integers(-5, 5), min_size=1, max_size=4)


@settings(max_examples=60)
@given(DEGS, st.sampled_from([QQ, F2, F5]), st.integers(0, 10**6))
def test_sandwich_recovered(degs, f, seed):
    m = sandwich(degs, f, seed)
    st_, cert = birkhoff_split(m)
    assert st_ == SplittingType.of(degs)
    assert verify_certificate(m, cert)
    assert side_check(cert.P, PolySide.PLUS) and side_check(cert.Q, PolySide.MINUS)
    assert st_.total == mat_det(m).low


@settings(max_examples=30)
@given(DEGS, st.sampled_from([QQ, F3]), st.integers(0, 10**6))
def test_h0_matches_closed_form_and_is_monotone(degs, f, seed):
    m = sandwich(degs, f, seed)
    values = [h0_dimension(m, tw) for tw in range(-8, 8)]
    assert values == [h0_closed_form(degs, tw) for tw in range(-8, 8)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert values[0] == 0
    assert values[-1] - values[-2] == len(degs)


def test_larger_rank_and_spread():
    for f in (QQ, F5):
        for seed in range(4):
            degs = [9, -7, 0, 3, 3, -1]
            m = sandwich(degs, f, seed, bound=3)
            st_, cert = birkhoff_split(m)
            assert st_ == SplittingType.of(degs)
            assert verify_certificate(m, cert)


def test_deterministic_output():
    m = sandwich([4, 1, -2], F5, seed=12)
    assert birkhoff_split(m) == birkhoff_split(m)
