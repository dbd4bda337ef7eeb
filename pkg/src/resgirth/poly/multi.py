"""Sparse multivariate polynomials over the integers or a tower field.

A polynomial in ``k`` variables maps exponent tuples of length ``k`` to
nonzero raw coefficients. Variables are 0-based here and render as
``t1..tk``. The degree notion everywhere is the per-variable degree.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Sequence

from ..errors import FieldMismatch, NoVariables
from ..galois import FieldElement, TowerField, make_prime_field


class IntegerRing:
    """The ring Z with the raw-value interface of :class:`TowerField`."""

    p = 0
    characteristic = 0
    zero = 0
    one = 1

    def __repr__(self):
        return "ZZ"

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def from_int(n):
        return n

    @staticmethod
    def render(a):
        return str(a)


ZZ = IntegerRing()


class MultiPoly:
    __slots__ = ("ring", "k", "terms", "_hash")

    def __init__(self, ring, k: int, terms: Mapping[tuple, object] | None = None):
        self.ring = ring
        self.k = k
        self._hash = None
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != k:
                    raise ValueError(f"exponent {e} does not have length {k}")
                if not ring.is_zero(c):
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, k, terms: dict) -> "MultiPoly":
        # terms already clean
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.k = k
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, ring, k: int) -> "MultiPoly":
        return cls._raw(ring, k, {})

    @classmethod
    def constant(cls, ring, k: int, c) -> "MultiPoly":
        if isinstance(c, int):
            c = ring.from_int(c)
        return cls._raw(ring, k, {} if ring.is_zero(c) else {(0,) * k: c})

    @classmethod
    def variable(cls, ring, k: int, i: int) -> "MultiPoly":
        if not 0 <= i < k:
            raise IndexError(f"variable index {i} outside 0..{k - 1}")
        e = [0] * k
        e[i] = 1
        return cls._raw(ring, k, {tuple(e): ring.one})

    @classmethod
    def monomial(cls, ring, k: int, exps: Sequence[int], c=None) -> "MultiPoly":
        c = ring.one if c is None else (ring.from_int(c) if isinstance(c, int) else c)
        return cls(ring, k, {tuple(exps): c})

    # -- predicates and accessors

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.k in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.k, self.ring.zero)

    def __len__(self):
        return len(self.terms)

    def items(self) -> list[tuple[tuple, object]]:
        """Terms in descending lexicographic exponent order."""
        return sorted(self.terms.items(), reverse=True)

    def degree(self, i: int) -> int:
        """Degree in variable ``i``; -1 for the zero polynomial."""
        return max((e[i] for e in self.terms), default=-1)

    def degrees(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.k
        return tuple(max(e[i] for e in self.terms) for i in range(self.k))

    def max_degree(self) -> int:
        """Largest per-variable degree (0 for constants and zero)."""
        return max(self.degrees(), default=0)

    def leading_exponent(self) -> tuple:
        return max(self.terms)

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def content(self) -> int:
        """gcd of integer coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    # -- arithmetic

    def _promote(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.k != self.k:
                raise ValueError(f"variable counts differ: {self.k} vs {other.k}")
            if other.ring is not self.ring and other.ring != self.ring:
                raise FieldMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.ring, self.k, other)
        if isinstance(other, FieldElement):
            return MultiPoly.constant(self.ring, self.k, self.ring.lift(other.value, other.field))
        return NotImplemented

    def __add__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        R = self.ring
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = R.add(out[e], c)
                if R.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MultiPoly._raw(R, self.k, out)

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return MultiPoly._raw(R, self.k, {e: R.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        R = self.ring
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = R.mul(c1, c2)
                if e in out:
                    out[e] = R.add(out[e], c)
                else:
                    out[e] = c
        return MultiPoly._raw(R, self.k, {e: c for e, c in out.items() if not R.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.constant(self.ring, self.k, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def scale(self, c) -> "MultiPoly":
        R = self.ring
        if isinstance(c, int):
            c = R.from_int(c)
        if R.is_zero(c):
            return MultiPoly.zero(R, self.k)
        return MultiPoly._raw(R, self.k, {e: R.mul(v, c) for e, v in self.terms.items()})

    def exact_div(self, other: "MultiPoly") -> "MultiPoly | None":
        """Quotient when ``other`` divides ``self`` exactly, else None.

        Single-divisor division in lex order: ``{other}`` is a Groebner basis
        of the ideal it generates, so the remainder vanishes iff it divides.
        Over Z the quotient must also be integral.
        """
        other = self._promote(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        R = self.ring
        if self.is_zero():
            return self
        lead_e = other.leading_exponent()
        lead_c = other.terms[lead_e]
        if len(other.terms) == 1:
            out = {}
            for e, c in self.terms.items():
                shifted = tuple(x - y for x, y in zip(e, lead_e))
                if any(x < 0 for x in shifted):
                    return None
                q = _ring_div(R, c, lead_c)
                if q is None:
                    return None
                out[shifted] = q
            return MultiPoly._raw(R, self.k, out)
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            e = max(rem)
            shift = tuple(x - y for x, y in zip(e, lead_e))
            if any(x < 0 for x in shift):
                return None
            c = _ring_div(R, rem[e], lead_c)
            if c is None:
                return None
            quot[shift] = c
            for oe, oc in other.terms.items():
                te = tuple(x + y for x, y in zip(oe, shift))
                v = R.sub(rem.get(te, R.zero), R.mul(c, oc))
                if R.is_zero(v):
                    rem.pop(te, None)
                else:
                    rem[te] = v
        return MultiPoly._raw(R, self.k, quot)

    # -- structure

    def decompose_last_variable(self) -> list["MultiPoly"]:
        """``[P_0, ..., P_n]`` in k-1 variables with ``sum P_i t_k^i == self``."""
        if self.k < 1:
            raise NoVariables("cannot decompose a polynomial in zero variables")
        n = self.degree(self.k - 1)
        parts: list[dict] = [{} for _ in range(max(n, 0) + 1)]
        for e, c in self.terms.items():
            parts[e[-1]][e[:-1]] = c
        return [MultiPoly._raw(self.ring, self.k - 1, d) for d in parts]

    @classmethod
    def recombine(cls, parts: Sequence["MultiPoly"]) -> "MultiPoly":
        """Inverse of :meth:`decompose_last_variable`."""
        ring = parts[0].ring
        k = parts[0].k + 1
        out = {}
        for i, P in enumerate(parts):
            for e, c in P.terms.items():
                out[e + (i,)] = c
        return cls._raw(ring, k, out)

    def extend_variables(self, k: int) -> "MultiPoly":
        """Same polynomial viewed in ``k >= self.k`` variables."""
        pad = (0,) * (k - self.k)
        return MultiPoly._raw(self.ring, k, {e + pad: c for e, c in self.terms.items()})

    def change_ring(self, field: TowerField) -> "MultiPoly":
        """Lift coefficients from a subfield (or integers) into ``field``."""
        if self.ring is ZZ:
            conv = field.from_int
        else:
            src = self.ring

            def conv(c):
                return field.lift(c, src)

        return MultiPoly(field, self.k, {e: conv(c) for e, c in self.terms.items()})

    def to_coeff_list(self, i: int) -> list:
        """Dense raw coefficients of a polynomial involving only variable ``i``."""
        n = self.degree(i)
        out = [self.ring.zero] * (n + 1)
        for e, c in self.terms.items():
            if any(x for j, x in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            out[e[i]] = c
        return out

    # -- comparison and rendering

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.ring, self.k, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms and (
            self.ring is other.ring or self.ring == other.ring
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def render(self) -> str:
        """Text in the entry grammar (re-parseable by ``parse_entry``)."""
        if not self.terms:
            return "0"
        R = self.ring
        pieces = []
        for idx, (e, c) in enumerate(self.items()):
            mono = "*".join(
                f"t{i + 1}" if x == 1 else f"t{i + 1}^{x}" for i, x in enumerate(e) if x
            )
            if R is ZZ:
                neg, mag = c < 0, abs(c)
            else:
                neg, mag = False, c
            cs = R.render(mag)
            if not mono:
                body = cs
            elif mag == R.one:
                body = mono
            else:
                body = f"{cs}*{mono}"
            if idx == 0:
                if neg:
                    body = f"-{cs}" if not mono else f"-{cs}*{mono}"
                pieces.append(body)
            else:
                pieces.append(("-" if neg else "+") + body)
        return "".join(pieces)

    def __repr__(self):
        return self.render()


def _ring_div(R, a, b):
    if R is ZZ:
        q, r = divmod(a, b)
        return q if r == 0 else None
    return R.div(a, b)


def reduce_coefficients_mod_p(P: MultiPoly, p: int) -> MultiPoly:
    """Coefficient-wise image of an integer polynomial in F_p."""
    if P.ring is not ZZ:
        raise FieldMismatch("coefficient reduction expects integer coefficients")
    F = make_prime_field(p)
    return MultiPoly(F, P.k, {e: c % p for e, c in P.terms.items()})


def _common_field(ring, values: Iterable[FieldElement]) -> TowerField:
    if not isinstance(ring, TowerField):
        raise FieldMismatch("specialize needs a polynomial over a finite field")
    top = ring
    for v in values:
        if top.is_subfield_of(v.field):
            top = v.field
        elif not v.field.is_subfield_of(top):
            raise FieldMismatch(f"{v.field!r} and {top!r} are not in one tower")
    return top


def specialize(P: MultiPoly, point) -> "MultiPoly | FieldElement":
    """Substitute field elements for variables.

    ``point`` is a sequence (``None`` leaves a variable free) or a mapping
    from 0-based variable index to value. A full assignment yields a
    :class:`FieldElement`; a partial one yields a polynomial over the common
    field in the same ``k`` variables, with assigned exponents zeroed.
    """
    if isinstance(point, Mapping):
        assign = dict(point)
    else:
        assign = {i: v for i, v in enumerate(point) if v is not None}
    for i in assign:
        if not 0 <= i < P.k:
            raise IndexError(f"variable index {i} outside 0..{P.k - 1}")
    L = _common_field(P.ring, assign.values())
    vals = {i: L.lift(v.value, v.field) for i, v in assign.items()}
    src = P.ring
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = L.pow(vals[i], e)
        return powers[key]

    full = len(vals) == P.k
    acc = L.zero
    out: dict = {}
    for e, c in P.terms.items():
        v = L.lift(c, src)
        rest = list(e)
        for i in vals:
            if e[i]:
                v = L.mul(v, power(i, e[i]))
                rest[i] = 0
        if full:
            acc = L.add(acc, v)
        else:
            key = tuple(rest)
            out[key] = L.add(out[key], v) if key in out else v
    if full:
        return FieldElement(L, acc)
    return MultiPoly(L, P.k, out)
