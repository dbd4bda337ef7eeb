"""Rational functions num/den over Z or F_p, used for generator entries."""

from __future__ import annotations

from math import gcd

from ..errors import ZeroDenominator, ZeroInversion
from .multi import ZZ, MultiPoly


class RationalEntry:
    """A quotient of two polynomials with a nonzero denominator.

    No gcd reduction is attempted beyond exact division and integer content;
    equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = MultiPoly.constant(num.ring, num.k, 1)
        if den.is_zero():
            raise ZeroDenominator("denominator is zero")
        self.num = num
        self.den = den

    @classmethod
    def from_int(cls, ring, k: int, n: int) -> "RationalEntry":
        return cls(MultiPoly.constant(ring, k, n))

    @property
    def ring(self):
        return self.num.ring

    @property
    def k(self) -> int:
        return self.num.k

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == 1

    def normalized(self) -> "RationalEntry":
        num, den = self.num, self.den
        if num.is_zero():
            return RationalEntry(num, MultiPoly.constant(num.ring, num.k, 1))
        q = num.exact_div(den)
        if q is not None:
            return RationalEntry(q)
        R = num.ring
        if R is ZZ:
            g = gcd(num.content(), den.content())
            lead = den.terms[den.leading_exponent()]
            if lead < 0:
                g = -g
            if g != 1:
                num = MultiPoly._raw(R, num.k, {e: c // g for e, c in num.terms.items()})
                den = MultiPoly._raw(R, den.k, {e: c // g for e, c in den.terms.items()})
        else:
            lead = den.terms[den.leading_exponent()]
            if lead != R.one:
                inv = R.inv(lead)
                num, den = num.scale(inv), den.scale(inv)
        return RationalEntry(num, den)

    def __add__(self, other: "RationalEntry") -> "RationalEntry":
        if self.den == other.den:
            return RationalEntry(self.num + other.num, self.den).normalized()
        return RationalEntry(
            self.num * other.den + other.num * self.den, self.den * other.den
        ).normalized()

    def __neg__(self):
        return RationalEntry(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "RationalEntry") -> "RationalEntry":
        return RationalEntry(self.num * other.num, self.den * other.den).normalized()

    def inverse(self) -> "RationalEntry":
        if self.num.is_zero():
            raise ZeroInversion("inverse of a zero entry")
        return RationalEntry(self.den, self.num).normalized()

    def __truediv__(self, other: "RationalEntry") -> "RationalEntry":
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalEntry.from_int(self.ring, self.k, other)
        if not isinstance(other, RationalEntry):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equality is up to cross-multiplication

    def render(self) -> str:
        if self.den == 1:
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"

    def __repr__(self):
        return self.render()
