"""Exact scalars: the rationals and prime fields F_p.

A :class:`FieldSpec` carries the characteristic and knows how to do
arithmetic on *raw* values (``Fraction`` for characteristic 0, ``int`` in
``[0, p)`` otherwise).  The polynomial and matrix code works on raw values
for speed; :class:`FieldElement` is the checked, user-facing wrapper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, FieldMismatch, InvalidParams, Unsupported

Raw = Union[int, Fraction]

# Deterministic Miller-Rabin witnesses; valid for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_WORD = 1 << 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``characteristic == 0``) or the prime field F_p."""

    characteristic: int

    def __post_init__(self) -> None:
        p = self.characteristic
        if not isinstance(p, int) or isinstance(p, bool):
            raise InvalidParams(f"characteristic must be an int, got {p!r}")
        if p == 0:
            return
        if p < 0 or p >= _WORD:
            raise InvalidParams(f"characteristic {p} outside [0, 2^64)")
        if not is_prime(p):
            raise InvalidParams(f"characteristic {p} is not prime")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"

    # -- raw arithmetic -------------------------------------------------
    # Hot loops call these directly; no type checks beyond what Python does.

    def raw(self, z: Raw) -> Raw:
        p = self.characteristic
        if p == 0:
            return Fraction(z)
        if isinstance(z, Fraction):
            num = z.numerator % p
            den = z.denominator % p
            if den == 0:
                raise DivisionByZero(f"{z} has no image in F_{p}")
            return num * pow(den, -1, p) % p
        return z % p

    @property
    def zero(self) -> Raw:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Raw:
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return a * b if p == 0 else a * b % p

    def neg(self, a: Raw) -> Raw:
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a: Raw) -> Raw:
        if not a:
            raise DivisionByZero(f"zero has no inverse in {self}")
        p = self.characteristic
        return 1 / a if p == 0 else pow(a, -1, p)

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def text(self, a: Raw) -> str:
        return str(a)

    def parse_raw(self, text: str) -> Raw:
        text = text.strip()
        if self.characteristic == 0:
            return Fraction(text)
        return self.raw(Fraction(text))

    def element(self, z: Raw) -> FieldElement:
        return FieldElement(self.raw(z), self)


@dataclass(frozen=True)
class FieldElement:
    """An immutable element of a :class:`FieldSpec`, stored canonically."""

    value: Raw
    field: FieldSpec

    def __post_init__(self) -> None:
        canon = self.field.raw(self.value)
        if canon != self.value or type(canon) is not type(self.value):
            object.__setattr__(self, "value", canon)

    def _other(self, b: FieldElement | int | Fraction) -> Raw:
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise FieldMismatch(f"{self.field} vs {b.field}")
            return b.value
        if isinstance(b, (int, Fraction)):
            return self.field.raw(b)
        return NotImplemented

    def __add__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FieldElement(self.field.add(self.value, v), self.field)

    __radd__ = __add__

    def __sub__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FieldElement(self.field.sub(self.value, v), self.field)

    def __rsub__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FieldElement(self.field.sub(v, self.value), self.field)

    def __mul__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FieldElement(self.field.mul(self.value, v), self.field)

    __rmul__ = __mul__

    def __truediv__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FieldElement(self.field.div(self.value, v), self.field)

    def __rtruediv__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FieldElement(self.field.div(v, self.value), self.field)

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field.neg(self.value), self.field)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __eq__(self, b) -> bool:
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise FieldMismatch(f"{self.field} vs {b.field}")
            return self.value == b.value
        if isinstance(b, (int, Fraction)):
            return self.value == self.field.raw(b)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.characteristic))

    def __bool__(self) -> bool:
        return bool(self.value)

    def __str__(self) -> str:
        return self.field.text(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.field})"

    @classmethod
    def parse(cls, text: str, field: FieldSpec) -> FieldElement:
        return cls(field.parse_raw(text), field)


def binomial(a: int, b: int) -> int:
    """C(a, b) with C(a, b) = 0 whenever b < 0 or b > a.

    A negative upper index is refused rather than extended.
    """
    if a < 0:
        raise Unsupported(f"binomial with negative upper index {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def reduce(z: int, field: FieldSpec) -> FieldElement:
    """Image of the integer ``z`` in ``field``."""
    return FieldElement(field.raw(z), field)
