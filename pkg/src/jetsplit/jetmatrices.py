"""Explicit transition and base-change matrices for principal parts on P^1.

Conventions: every matrix is written in the coordinate t of the chart
U_0 = D(x_0).  Column p of a transition matrix holds the coordinates of the
p-th U_1 frame vector in the U_0 frame, so a section with U_0 coordinates f
(over F[t]) and U_1 coordinates g (over F[1/t]) satisfies f = M g.  With this
convention O(m) has transition t^m.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CharacteristicDividesN, InvalidParams
from .exactfield import FieldSpec, binomial
from .laurent import QQ, LaurentMatrix, LaurentPoly

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class JetParams:
    n: int
    k: int
    field: FieldSpec = QQ
    side: str = LEFT

    def __post_init__(self) -> None:
        if self.side not in (LEFT, RIGHT):
            raise InvalidParams(f"side must be 'left' or 'right', got {self.side!r}")
        if not 1 <= self.k <= self.n:
            raise InvalidParams(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.side == RIGHT and self.k != 1:
            raise InvalidParams("the right module structure is only available for k = 1")


def _mono(coeff: int, exp: int, field: FieldSpec) -> LaurentPoly:
    return LaurentPoly({exp: coeff}, field)


def untwisted_transition(k: int, field: FieldSpec = QQ) -> LaurentMatrix:
    """Transition matrix of P^k itself: column p expands ds^p in the dt basis."""
    if k < 1:
        raise InvalidParams(f"k must be >= 1, got {k}")
    zero = LaurentPoly.zero(field)
    rows = [[zero] * (k + 1) for _ in range(k + 1)]
    # ds^0 = dt^0 = 1; built literally to avoid C(-1, -1).
    rows[0][0] = LaurentPoly.one(field)
    for p in range(1, k + 1):
        for i in range(k - p + 1):
            sign = -1 if (i + p) % 2 else 1
            rows[i + p][p] = _mono(sign * binomial(i + p - 1, p - 1), -(i + 2 * p), field)
    return LaurentMatrix(rows, field)


def left_transition(params: JetParams) -> LaurentMatrix:
    """Transition matrix of P^k(O(n)) as a left module (lower triangular)."""
    if params.side != LEFT:
        raise InvalidParams("left_transition needs side='left'")
    n, k, field = params.n, params.k, params.field
    zero = LaurentPoly.zero(field)
    rows = [[zero] * (k + 1) for _ in range(k + 1)]
    for p in range(k + 1):
        sign = -1 if p % 2 else 1
        for i in range(k - p + 1):
            rows[i + p][p] = _mono(sign * binomial(n - p, i), n - i - 2 * p, field)
    return LaurentMatrix(rows, field)


def right_transition(n: int, field: FieldSpec = QQ) -> LaurentMatrix:
    """Transition matrix of P^1(O(n)) as a right module: diag(t^n, -t^(n-2))."""
    if n < 1:
        raise InvalidParams(f"n must be >= 1, got {n}")
    return LaurentMatrix.diagonal([_mono(1, n, field), _mono(-1, n - 2, field)], field)


def transition(params: JetParams) -> LaurentMatrix:
    if params.side == RIGHT:
        return right_transition(params.n, params.field)
    return left_transition(params)


def p1_base_change(n: int, field: FieldSpec = QQ) -> tuple[LaurentMatrix, LaurentMatrix]:
    """Base changes C -> D (over F[t]) and D' -> C' (over F[1/t]) for P^1(O(n)).

    Sandwiching the left transition matrix between them gives
    diag(t^(n-1), t^(n-1)).
    """
    if n < 1:
        raise InvalidParams(f"n must be >= 1, got {n}")
    p = field.characteristic
    if p and n % p == 0:
        raise CharacteristicDividesN(f"characteristic {p} divides n={n}")
    inv_n = field.inv(field.raw(n))
    to_d = LaurentMatrix(
        [
            [LaurentPoly.one(field), LaurentPoly({1: field.neg(inv_n)}, field)],
            [LaurentPoly.zero(field), LaurentPoly({0: inv_n}, field)],
        ],
        field,
    )
    from_d_prime = LaurentMatrix(
        [
            [_mono(1, -1, field), LaurentPoly.one(field)],
            [LaurentPoly.const(n, field), LaurentPoly.zero(field)],
        ],
        field,
    )
    return to_d, from_d_prime


# older public name, kept so existing callers keep working
section4_factors = p1_base_change
