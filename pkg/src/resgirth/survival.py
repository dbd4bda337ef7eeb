"""Small quotient fields in which a polynomial survives.

Univariate: scan monic irreducibles by degree ``m = 1, 2, ...`` in canonical
order and stop at the first one that does not divide ``P``; the quotient
``F[t]/(g)`` has at most ``2 * deg(P) * q`` elements. Multivariate: split off
the last variable, make the lowest nonzero coefficient survive recursively,
then run the univariate step over the field obtained.

Both entry points accept a list of factors in place of a single
polynomial. The result is the one the algorithm gives for their product,
because an irreducible divides a product iff it divides a factor, and the
lowest coefficient of a product is the product of the lowest coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Sequence

from . import _dense
from .errors import FieldMismatch, ZeroPolynomial
from .galois import ExtensionField, FieldElement, TowerField
from .poly.multi import MultiPoly, specialize


@dataclass(frozen=True)
class Step:
    """One univariate quotient: variable ``var`` sent to a root of ``modulus``."""

    var: int
    degree: int  # the extension degree m
    modulus: tuple  # raw monic coefficients over the field below
    field_order: int


@dataclass
class Specialization:
    k: int
    base: TowerField
    field: TowerField
    assignment: tuple  # raw values in ``field``, one per variable
    steps: list[Step] = field(default_factory=list)
    bound: int | None = None

    @property
    def order(self) -> int:
        return self.field.order

    def point(self) -> list[FieldElement]:
        return [FieldElement(self.field, v) for v in self.assignment]

    def apply(self, P: MultiPoly) -> FieldElement:
        """Image of ``P`` (over ``base``) under this specialization."""
        return specialize(P, self.point())

    def describe(self) -> dict:
        return {
            "field_order": self.field.order,
            "field": repr(self.field),
            "assignment": {f"t{i + 1}": self.field.render(v) for i, v in enumerate(self.assignment)},
            "steps": [
                {"var": f"t{s.var + 1}", "m": s.degree, "field_order": s.field_order}
                for s in self.steps
            ],
        }


def _lift_to(L: TowerField, values, src: TowerField):
    return [L.lift(v, src) for v in values]


def _univariate_step(F: TowerField, factors: list[list]):
    """First monic irreducible over F dividing none of ``factors`` (raw coefficient lists).

    Returns ``(m, modulus, target field, root)``.
    """
    for m in count(1):
        if m == 1:
            for a in F.raw_elements():
                root = F.neg(a)
                if all(not F.is_zero(_dense.evaluate(F, f, root)) for f in factors):
                    return 1, (a, F.one), F, root
            continue
        for g in _dense.iter_monic_irreducibles(F, m):
            if all(_dense.mod(F, f, g) for f in factors):
                L = ExtensionField(F, g)
                return m, tuple(g), L, L.gen
    raise AssertionError("unreachable")


def survive_univariate(P, var_name: int = 0):
    """Quotient field of F[t] in which ``P`` survives.

    ``P`` is a nonzero :class:`UniPoly` or a list of them (read as their
    product). Returns ``(Specialization, image)`` where ``image`` is the
    value at the adjoined root (for a list, the product of the values).
    """
    factors = list(P) if isinstance(P, (list, tuple)) else [P]
    if not factors:
        raise ValueError("survive_univariate needs at least one polynomial")
    F = factors[0].field
    for f in factors:
        if f.field != F:
            raise FieldMismatch("factors over different fields")
        if f.is_zero():
            raise ZeroPolynomial("the zero polynomial survives nowhere")
    total_deg = sum(f.degree for f in factors)
    m, modulus, L, root = _univariate_step(F, [list(f.coeffs) for f in factors])
    bound = 2 * max(total_deg, 1) * F.order
    if L.order > bound:
        raise AssertionError(f"field of order {L.order} exceeds bound {bound}")
    image = L.one
    for f in factors:
        image = L.mul(image, _dense.evaluate(L, _lift_to(L, f.coeffs, F), root))
    spec = Specialization(
        k=1, base=F, field=L, assignment=(root,),
        steps=[Step(var_name, m, modulus, L.order)], bound=bound,
    )
    return spec, FieldElement(L, image)


def _lowest_coefficient(P: MultiPoly) -> MultiPoly:
    for part in P.decompose_last_variable():
        if not part.is_zero():
            return part
    raise ZeroPolynomial("zero polynomial")


def _survive(factors: list[MultiPoly], k: int, F: TowerField):
    """Recursive core: returns ``(L, assignment, steps)``."""
    if k == 0:
        return F, [], []
    lows = [_lowest_coefficient(f) for f in factors]
    L, assign, steps = _survive(lows, k - 1, F)
    last = k - 1
    images = []
    for f in factors:
        coeffs: dict[int, object] = {}
        pw: dict = {}
        for e, c in f.terms.items():
            v = L.lift(c, F)
            for i in range(last):
                if e[i]:
                    key = (i, e[i])
                    if key not in pw:
                        pw[key] = L.pow(assign[i], e[i])
                    v = L.mul(v, pw[key])
            d = e[last]
            coeffs[d] = L.add(coeffs[d], v) if d in coeffs else v
        dense = [L.zero] * (max(coeffs) + 1)
        for d, v in coeffs.items():
            dense[d] = v
        images.append(_dense.trim(L, dense))
    m, modulus, L2, root = _univariate_step(L, images)
    assign = [L2.lift(a, L) for a in assign] + [root]
    steps = steps + [Step(last, m, modulus, L2.order)]
    return L2, assign, steps


def product_degrees(factors: Sequence[MultiPoly]) -> tuple[int, ...]:
    k = factors[0].k
    out = [0] * k
    for f in factors:
        for i, d in enumerate(f.degrees()):
            out[i] += d
    return tuple(out)


def survive_multivariate(P, n: int | None = None):
    """Full assignment ``t_i -> alpha_i`` in a finite field under which ``P`` survives.

    ``P`` is a nonzero :class:`MultiPoly` over a tower field, or a list of
    them read as their product. ``n`` defaults to the largest per-variable
    degree (of the product). The target field has at most
    ``(2 * max(n, 1))**k * q`` elements.
    """
    factors = list(P) if isinstance(P, (list, tuple)) else [P]
    if not factors:
        raise ValueError("survive_multivariate needs at least one polynomial")
    F = factors[0].ring
    k = factors[0].k
    if not isinstance(F, TowerField):
        raise FieldMismatch("survival needs coefficients in a finite field")
    for f in factors:
        if f.ring != F or f.k != k:
            raise FieldMismatch("factors over different rings")
        if f.is_zero():
            raise ZeroPolynomial("the zero polynomial survives nowhere")
    degs = product_degrees(factors)
    if n is None:
        n = max(degs, default=0)
    elif max(degs, default=0) > n:
        raise ValueError(f"per-variable degree {max(degs)} exceeds n = {n}")
    L, assign, steps = _survive(factors, k, F)
    bound = (2 * max(n, 1)) ** k * F.order
    if L.order > bound:
        raise AssertionError(f"field of order {L.order} exceeds bound {bound}")
    spec = Specialization(k=k, base=F, field=L, assignment=tuple(assign), steps=steps, bound=bound)
    image = L.one
    for f in factors:
        image = L.mul(image, spec.apply(f).value)
    return spec, FieldElement(L, image)


def survives(P: MultiPoly, spec: Specialization) -> bool:
    return not spec.apply(P).is_zero()
