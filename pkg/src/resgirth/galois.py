"""Finite fields as towers of quotient extensions over a prime field.

A field is either a :class:`PrimeField` (``Z/p``) or an
:class:`ExtensionField` ``base[x]/(f)`` for a monic irreducible ``f`` over
``base``. Towers are never flattened.

Elements travel in two forms. Hot loops use *raw* values: an ``int`` in
``range(p)`` at the prime level, and a tuple of ``degree`` raw base values
(lowest power first) one level up. :class:`FieldElement` wraps a raw value
with its field and gives ordinary operator syntax.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from . import _dense
from .errors import FieldMismatch, NotPrime, ReducibleModulus, ZeroInversion
from .numbers import is_prime


class TowerField:
    p: int
    order: int
    degree: int  # degree of the top step over ``base``
    level: int
    base: "TowerField | None"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def total_degree(self) -> int:
        return _total_degree(self)

    def level_degrees(self) -> list[int]:
        out, f = [], self
        while f.base is not None:
            out.append(f.degree)
            f = f.base
        return out[::-1]

    def prime_field(self) -> "PrimeField":
        f = self
        while f.base is not None:
            f = f.base
        return f  # type: ignore[return-value]

    def is_subfield_of(self, other: "TowerField") -> bool:
        """True when ``self`` occurs in ``other``'s tower (including equality)."""
        f: TowerField | None = other
        while f is not None:
            if f is self or f == self:
                return True
            f = f.base
        return False

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def raw_elements(self) -> Iterator:
        for i in range(self.order):
            yield self.from_index(i)

    def elements(self) -> Iterator["FieldElement"]:
        for raw in self.raw_elements():
            yield FieldElement(self, raw)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return self.embed(value)
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, value)

    def embed(self, x: "FieldElement") -> "FieldElement":
        return FieldElement(self, self.lift(x.value, x.field))

    def lift(self, raw, src: "TowerField"):
        """Map a raw value of subfield ``src`` into this field."""
        if src is self or src == self:
            return raw
        if self.base is None:
            raise FieldMismatch(f"{src} is not a subfield of {self}")
        inner = self.base.lift(raw, src)
        return (inner,) + (self.base.zero,) * (self.degree - 1)

    def __iter__(self):
        return self.elements()

    def __len__(self):
        return self.order


def _total_degree(f: TowerField) -> int:
    deg = 1
    while f.base is not None:
        deg *= f.degree
        f = f.base
    return deg


class PrimeField(TowerField):
    def __init__(self, p: int):
        self.p = p
        self.order = p
        self.degree = 1
        self.level = 0
        self.base = None
        self.modulus = None
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroInversion("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        return pow(a, e, self.p)

    def from_int(self, n: int):
        return n % self.p

    def from_index(self, i: int):
        return i

    def index(self, a) -> int:
        return a

    @property
    def gen(self):
        return 1

    def render(self, a) -> str:
        return str(a)


class ExtensionField(TowerField):
    def __init__(self, base: TowerField, modulus):
        self.base = base
        self.p = base.p
        self.modulus = tuple(modulus)
        self.degree = len(self.modulus) - 1
        self.order = base.order**self.degree
        self.level = base.level + 1
        self.zero = (base.zero,) * self.degree
        self.one = (base.one,) + (base.zero,) * (self.degree - 1)
        self._hash = hash((base, self.modulus))

    def __repr__(self):
        return f"{self.base!r}[x]/({render_raw_poly(self.base, self.modulus)})"

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, ExtensionField)
            and self._hash == other._hash
            and self.modulus == other.modulus
            and self.base == other.base
        )

    def __hash__(self):
        return self._hash

    def is_zero(self, a) -> bool:
        return a == self.zero

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        d = self.degree
        prod = [B.zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if B.is_zero(x):
                continue
            for j, y in enumerate(b):
                if B.is_zero(y):
                    continue
                prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        mod = self.modulus
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if B.is_zero(c):
                continue
            for j in range(d):
                prod[i - d + j] = B.sub(prod[i - d + j], B.mul(c, mod[j]))
        return tuple(prod[:d])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroInversion("inverse of zero")
        B = self.base
        inv = _dense.inverse_mod(B, _dense.trim(B, a), list(self.modulus))
        return self._pad(inv)

    def _pad(self, coeffs):
        coeffs = list(coeffs)
        return tuple(coeffs + [self.base.zero] * (self.degree - len(coeffs)))

    def from_int(self, n: int):
        return (self.base.from_int(n),) + (self.base.zero,) * (self.degree - 1)

    def from_index(self, i: int):
        B = self.base
        out = []
        for _ in range(self.degree):
            i, digit = divmod(i, B.order)
            out.append(B.from_index(digit))
        return tuple(out)

    def index(self, a) -> int:
        B = self.base
        idx = 0
        for c in reversed(a):
            idx = idx * B.order + B.index(c)
        return idx

    @property
    def gen(self):
        """The adjoined root: the class of the indeterminate."""
        if self.degree == 1:
            return (self.base.neg(self.modulus[0]),)
        return self.from_index(self.base.order)

    def render(self, a) -> str:
        return "(" + ",".join(self.base.render(c) for c in a) + ")"


class FieldElement:
    """An element of a :class:`TowerField` with operator syntax."""

    __slots__ = ("field", "value")

    def __init__(self, field: TowerField, value):
        self.field = field
        self.value = value

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            raise FieldMismatch(f"{other.field!r} vs {self.field!r}")
        if isinstance(other, int):
            return FieldElement(self.field, self.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return self.field.render(self.value)

    __str__ = __repr__


def render_raw_poly(F: TowerField, coeffs, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if F.is_zero(c):
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        cs = F.render(c)
        if not mono:
            terms.append(cs)
        elif c == F.one:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return "+".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def make_prime_field(p: int) -> PrimeField:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return PrimeField(p)


def extend_field(base: TowerField, modulus) -> ExtensionField:
    """Adjoin a root of ``modulus`` (a UniPoly over ``base`` or raw coefficients)."""
    if hasattr(modulus, "coeffs"):
        if modulus.field != base:
            raise FieldMismatch("modulus must have coefficients in the base field")
        coeffs = list(modulus.coeffs)
    else:
        coeffs = [base.lift(c, base) for c in modulus]
    coeffs = _dense.trim(base, coeffs)
    if len(coeffs) < 2:
        raise ReducibleModulus("modulus must have degree >= 1")
    if coeffs[-1] != base.one:
        raise ValueError("modulus must be monic")
    if not _dense.is_irreducible(base, coeffs):
        raise ReducibleModulus(
            f"{render_raw_poly(base, coeffs, 't')} is reducible over {base!r}"
        )
    return ExtensionField(base, coeffs)


def first_irreducible(base: TowerField, degree: int):
    """Smallest monic irreducible of the given degree in canonical order."""
    return next(_dense.iter_monic_irreducibles(base, degree))


@lru_cache(maxsize=None)
def canonical_extension(base: TowerField, degree: int) -> TowerField:
    """``base`` itself for degree 1, else one step by :func:`first_irreducible`."""
    if degree == 1:
        return base
    return ExtensionField(base, first_irreducible(base, degree))


def field_of_order(q: int) -> TowerField:
    """F_q as a single canonical extension of its prime field."""
    from .numbers import prime_power

    pe = prime_power(q)
    if pe is None:
        raise NotPrime(f"{q} is not a prime power")
    p, e = pe
    return canonical_extension(make_prime_field(p), e)


def enumerate_elements(field: TowerField) -> Iterator[FieldElement]:
    return field.elements()
