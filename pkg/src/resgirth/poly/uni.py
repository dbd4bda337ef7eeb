"""Univariate polynomials over tower fields, irreducibility, Gauss counting."""

from __future__ import annotations

from typing import Iterator

from .. import _dense
from ..errors import ConstantPolynomial, DivisionByZeroPoly, FieldMismatch
from ..galois import FieldElement, TowerField, render_raw_poly
from ..numbers import divisors, mobius, prime_power


class UniPoly:
    """Dense polynomial, lowest degree first; the zero polynomial has no coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: TowerField, coeffs=()):
        self.field = field
        self.coeffs = tuple(_dense.trim(field, coeffs))

    @classmethod
    def from_ints(cls, field: TowerField, ints) -> "UniPoly":
        return cls(field, [field.from_int(c) for c in ints])

    @classmethod
    def x(cls, field: TowerField) -> "UniPoly":
        return cls(field, [field.zero, field.one])

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def _check(self, other) -> "UniPoly":
        if isinstance(other, int):
            return UniPoly(self.field, [self.field.from_int(other)])
        if isinstance(other, FieldElement):
            return UniPoly(self.field, [self.field.lift(other.value, other.field)])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return UniPoly(self.field, _dense.add(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return UniPoly(self.field, _dense.sub(self.field, self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return UniPoly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return UniPoly(self.field, _dense.mul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        out = UniPoly(self.field, [self.field.one])
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def divrem(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        other = self._check(other)
        if other.is_zero():
            raise DivisionByZeroPoly("division by the zero polynomial")
        q, r = _dense.divmod_(self.field, self.coeffs, other.coeffs)
        return UniPoly(self.field, q), UniPoly(self.field, r)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def gcd(self, other: "UniPoly") -> "UniPoly":
        other = self._check(other)
        return UniPoly(self.field, _dense.gcd(self.field, self.coeffs, other.coeffs))

    def monic(self) -> "UniPoly":
        return UniPoly(self.field, _dense.monic(self.field, self.coeffs))

    def divides(self, other: "UniPoly") -> bool:
        return (other % self).is_zero()

    def evaluate(self, x):
        """Value at ``x`` (FieldElement of an extension, raw value, or int)."""
        if isinstance(x, FieldElement):
            L = x.field
            coeffs = [L.lift(c, self.field) for c in self.coeffs]
            return FieldElement(L, _dense.evaluate(L, coeffs, x.value))
        if isinstance(x, int):
            x = self.field.from_int(x)
        return FieldElement(self.field, _dense.evaluate(self.field, self.coeffs, x))

    def __call__(self, x):
        return self.evaluate(x)

    def __eq__(self, other):
        if isinstance(other, int):
            other = UniPoly(self.field, [self.field.from_int(other)])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def render(self, var: str = "t") -> str:
        return render_raw_poly(self.field, self.coeffs, var)

    def __repr__(self):
        return self.render()


def is_irreducible(f: UniPoly) -> bool:
    if f.degree < 1:
        raise ConstantPolynomial("irreducibility needs degree >= 1")
    return _dense.is_irreducible(f.field, list(f.coeffs))


def enumerate_monic_polys(field: TowerField, m: int) -> Iterator[UniPoly]:
    for coeffs in _dense.iter_monic(field, m):
        yield UniPoly(field, coeffs)


def enumerate_monic_irreducibles(field: TowerField, m: int) -> Iterator[UniPoly]:
    """All monic irreducibles of degree m, ascending by coefficient vector.

    The vector is compared as a base-|F| numeral whose most significant
    digit is the highest non-leading coefficient.
    """
    if m < 1:
        raise ValueError("degree must be >= 1")
    for coeffs in _dense.iter_monic_irreducibles(field, m):
        yield UniPoly(field, coeffs)


def count_irreducibles(q: int, n: int) -> int:
    """Number of monic irreducibles of degree n over F_q (Gauss's formula)."""
    if prime_power(q) is None:
        raise ValueError(f"q = {q} is not a prime power")
    if n < 1:
        raise ValueError("n must be >= 1")
    total = sum(mobius(n // d) * q**d for d in divisors(n))
    assert total % n == 0
    return total // n
