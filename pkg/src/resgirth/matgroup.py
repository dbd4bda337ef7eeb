"""Matrix groups over F_q(t1..tk) or Q(t1..tk): specs, balls, reductions.

A group is given by generator matrices with rational-function entries.
The generating set is made symmetric and given the identity, then written
as ``S = D**-lam * T`` with ``T`` polynomial, where ``D = Q`` in
characteristic p and ``D = r*Q`` (``r`` a positive integer, ``Q`` with
coprime coefficients) in characteristic 0.

Ball elements are stored in one of two exact forms:

* ``k == 0``: flat tuples of scalars (``int``/``Fraction`` in
  characteristic 0, residues mod p otherwise);
* ``k >= 1``: pairs ``(e, A)`` standing for ``D**-e * A`` with ``A`` a flat
  tuple of polynomials and ``e`` minimal, which makes the pair canonical.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from operator import mul as _mul
from pathlib import Path
from typing import Sequence

from .errors import (
    BadCharacteristic,
    BallBudgetExceeded,
    DenominatorVanishes,
    FieldMismatch,
    NonSquareMatrix,
    SchemaError,
    SingularGenerator,
)
from .galois import FieldElement, TowerField, canonical_extension, make_prime_field
from .numbers import is_prime, prime_power
from .poly.multi import ZZ, MultiPoly
from .poly.parse import coefficient_ring, parse_entry
from .poly.rational import RationalEntry

DEFAULT_BALL_BUDGET = 5_000_000

RationalMatrix = list  # d x d nested lists of RationalEntry


def default_ball_budget() -> int:
    env = os.environ.get("GIRTH_BALL_BUDGET")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise SchemaError(f"GIRTH_BALL_BUDGET={env!r} is not an integer") from None
        if value < 1:
            raise SchemaError("GIRTH_BALL_BUDGET must be positive")
        return value
    return DEFAULT_BALL_BUDGET


# ---------------------------------------------------------------- group specs


@dataclass
class GroupSpec:
    d: int
    characteristic: int
    k: int
    generators: list[RationalMatrix]
    q: int | None = None
    name: str = ""
    auto_symmetrize: bool = True

    @property
    def ring(self):
        """Coefficient ring of entries: ZZ or F_p."""
        return coefficient_ring(self.characteristic)

    @property
    def base_field(self) -> TowerField | None:
        """F_q in characteristic p (a tower over F_p when q is not prime)."""
        if self.characteristic == 0:
            return None
        _, e = prime_power(self.q)
        return canonical_extension(make_prime_field(self.characteristic), e)


def _require_int(data, key, default=None, minimum=None):
    if key not in data:
        if default is None:
            raise SchemaError(f"missing field {key!r}")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"field {key!r} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise SchemaError(f"field {key!r} must be >= {minimum}, got {value}")
    return value


def group_spec_from_dict(data) -> GroupSpec:
    if not isinstance(data, dict):
        raise SchemaError("group spec must be a JSON object")
    d = _require_int(data, "d", minimum=1)
    char = _require_int(data, "characteristic", minimum=0)
    if char != 0 and not is_prime(char):
        raise BadCharacteristic(f"characteristic {char} is neither 0 nor a prime")
    k = _require_int(data, "k", default=0, minimum=0)
    q = data.get("q")
    if char == 0:
        q = None
    else:
        if q is None:
            q = char
        if isinstance(q, bool) or not isinstance(q, int):
            raise SchemaError(f"field 'q' must be an integer, got {q!r}")
        pe = prime_power(q)
        if pe is None or pe[0] != char:
            raise BadCharacteristic(f"q = {q} is not a power of the characteristic {char}")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("field 'name' must be a string")
    auto = data.get("auto_symmetrize", True)
    if not isinstance(auto, bool):
        raise SchemaError("field 'auto_symmetrize' must be a boolean")
    gens_raw = data.get("generators")
    if not isinstance(gens_raw, list) or not gens_raw:
        raise SchemaError("field 'generators' must be a non-empty list of matrices")
    gens = []
    for gi, mat in enumerate(gens_raw):
        if not isinstance(mat, list) or not all(isinstance(row, list) for row in mat):
            raise SchemaError(f"generator {gi} is not a list of rows")
        rows = len(mat)
        for row in mat:
            if len(row) != rows:
                raise NonSquareMatrix(
                    f"generator {gi} is {rows}x{len(row)}, not square"
                )
        if rows != d:
            raise SchemaError(f"generator {gi} is {rows}x{rows}, expected {d}x{d}")
        parsed = []
        for row in mat:
            prow = []
            for cell in row:
                if isinstance(cell, bool) or not isinstance(cell, (str, int)):
                    raise SchemaError(f"generator {gi}: entry {cell!r} must be a string")
                prow.append(parse_entry(str(cell), k, char).normalized())
            parsed.append(prow)
        if rmat_det(parsed).is_zero():
            raise SingularGenerator(f"generator {gi} has zero determinant")
        gens.append(parsed)
    return GroupSpec(d=d, characteristic=char, k=k, generators=gens, q=q, name=name,
                     auto_symmetrize=auto)


def load_group_spec(source) -> GroupSpec:
    """Load a spec from a path, an open file, or a bundled example name."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        path = Path(source)
        if not path.exists():
            for cand in (path.name, path.name + ".json"):
                bundled = bundled_spec_path(cand)
                if bundled.exists():
                    path = bundled
                    break
        text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return group_spec_from_dict(data)


def bundled_spec_path(name: str) -> Path:
    return Path(__file__).with_name("specs") / name


# ------------------------------------------------------- rational matrices


def rmat_identity(ring, k: int, d: int) -> RationalMatrix:
    one = RationalEntry.from_int(ring, k, 1)
    zero = RationalEntry.from_int(ring, k, 0)
    return [[one if i == j else zero for j in range(d)] for i in range(d)]


def rmat_mul(A: RationalMatrix, B: RationalMatrix) -> RationalMatrix:
    d = len(A)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = None
            for l in range(d):
                if A[i][l].is_zero() or B[l][j].is_zero():
                    continue
                term = A[i][l] * B[l][j]
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else RationalEntry.from_int(A[0][0].ring, A[0][0].k, 0))
        out.append(row)
    return out


def _minor(A, i, j):
    return [row[:j] + row[j + 1:] for r, row in enumerate(A) if r != i]


def rmat_det(A: RationalMatrix) -> RationalEntry:
    d = len(A)
    if d == 1:
        return A[0][0]
    acc = None
    for j in range(d):
        if A[0][j].is_zero():
            continue
        term = A[0][j] * rmat_det(_minor(A, 0, j))
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else A[0][0]


def rmat_inverse(A: RationalMatrix) -> RationalMatrix:
    """Inverse by adjugate over determinant."""
    d = len(A)
    det = rmat_det(A)
    if det.is_zero():
        raise SingularGenerator("matrix has zero determinant")
    inv_det = det.inverse()
    if d == 1:
        return [[inv_det]]
    out = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            cof = rmat_det(_minor(A, i, j))
            if (i + j) % 2:
                cof = -cof
            out[j][i] = (cof * inv_det).normalized()
    return out


def rmat_equal(A: RationalMatrix, B: RationalMatrix) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def rmat_render(A: RationalMatrix) -> list[list[str]]:
    return [[e.render() for e in row] for row in A]


def normalize_generating_set(gens: Sequence[RationalMatrix], symmetrize: bool = True) -> list:
    """``{1} u gens u gens^-1`` without duplicates, identity first."""
    if not gens:
        raise SchemaError("empty generating set")
    first = gens[0][0][0]
    S = [rmat_identity(first.ring, first.k, len(gens[0]))]

    def add(M):
        if not any(rmat_equal(M, X) for X in S):
            S.append(M)

    for g in gens:
        if rmat_det(g).is_zero():
            raise SingularGenerator("generator has zero determinant")
        add(g)
        if symmetrize:
            add(rmat_inverse(g))
    if not symmetrize:
        for g in S:
            ginv = rmat_inverse(g)
            if not any(rmat_equal(ginv, X) for X in S):
                raise SchemaError("generating set is not symmetric (auto_symmetrize is off)")
    return S


# -------------------------------------------------- clearing denominators


@dataclass
class ClearedGens:
    S: list[RationalMatrix]
    lam: int
    Q: MultiPoly
    r: int
    T: list[tuple]  # flat row-major tuples of MultiPoly
    characteristic: int

    @property
    def D(self) -> MultiPoly:
        """The full denominator ``r*Q`` (just ``Q`` in characteristic p)."""
        return self.Q.scale(self.r) if self.r != 1 else self.Q

    @property
    def s(self) -> int:
        return len(self.S)


def clear_denominators(S: list[RationalMatrix], characteristic: int) -> ClearedGens:
    entries = [e for M in S for row in M for e in row]
    ring, k = entries[0].ring, entries[0].k
    one = MultiPoly.constant(ring, k, 1)
    total = one
    seen: list[MultiPoly] = []
    for e in entries:
        den = e.den
        if den == 1 or any(den == x for x in seen):
            continue
        seen.append(den)
        if total.exact_div(den) is None:
            total = total * den
    if ring is ZZ:
        r = total.content()
        Q = MultiPoly._raw(ZZ, k, {x: c // r for x, c in total.terms.items()})
        if Q.terms[Q.leading_exponent()] < 0:
            Q = -Q
        r = abs(r)
    else:
        lead = total.terms[total.leading_exponent()]
        Q = total.scale(ring.inv(lead))
        r = 1
    D = Q.scale(r) if r != 1 else Q
    lam = 0
    power = one
    while True:
        T = []
        ok = True
        for M in S:
            flat = []
            for row in M:
                for e in row:
                    c = (e.num * power).exact_div(e.den)
                    if c is None:
                        ok = False
                        break
                    flat.append(c)
                if not ok:
                    break
            if not ok:
                break
            T.append(tuple(flat))
        if ok:
            return ClearedGens(S=S, lam=lam, Q=Q, r=r, T=T, characteristic=characteristic)
        lam += 1
        power = power * D


@dataclass(frozen=True)
class EntryBounds:
    m: int  # max per-variable degree over entries of T
    delta: int  # max per-variable degree of Q
    s: int
    R: int | None  # max |coefficient| over entries of T (characteristic 0)
    M: int  # max number of monomials in an entry of T


def entry_bounds(cleared: ClearedGens) -> EntryBounds:
    polys = [P for A in cleared.T for P in A]
    m = max((P.max_degree() for P in polys), default=0)
    R = max((P.max_abs_coeff() for P in polys), default=0) if cleared.characteristic == 0 else None
    M = max((len(P) for P in polys), default=0)
    return EntryBounds(m=m, delta=cleared.Q.max_degree(), s=cleared.s, R=R, M=M)


# ------------------------------------------------------------- ball domains


class ScalarDomain:
    """Matrices over Q or F_p as flat tuples (k = 0)."""

    def __init__(self, d: int, characteristic: int):
        self.d = d
        self.characteristic = characteristic
        self.identity = tuple(1 if i % (d + 1) == 0 else 0 for i in range(d * d))
        self.integral = True
        self._cols = [tuple(range(j, d * d, d)) for j in range(d)]

    def from_rational(self, M: RationalMatrix) -> tuple:
        out = []
        p = self.characteristic
        for row in M:
            for e in row:
                num, den = e.num.constant_value(), e.den.constant_value()
                if p:
                    out.append(num * pow(den, -1, p) % p)
                else:
                    x = Fraction(num, den)
                    if x.denominator == 1:
                        out.append(int(x))
                    else:
                        out.append(x)
                        self.integral = False
        return tuple(out)

    def mul(self, a: tuple, b: tuple) -> tuple:
        d = self.d
        cols = [[b[i] for i in c] for c in self._cols]
        out = []
        p = self.characteristic
        for i in range(0, d * d, d):
            row = a[i:i + d]
            for col in cols:
                s = sum(map(_mul, row, col))
                out.append(s % p if p else s)
        return tuple(out)

    def is_identity(self, a) -> bool:
        return a == self.identity

    def render(self, a) -> list[list[str]]:
        d = self.d
        return [[str(a[i * d + j]) for j in range(d)] for i in range(d)]


class LocalizedDomain:
    """Matrices over R[t1..tk][1/D] as canonical pairs ``(e, A)`` (k >= 1)."""

    def __init__(self, d: int, cleared: ClearedGens, ring, k: int):
        self.d = d
        self.ring = ring
        self.k = k
        self.D = cleared.D
        self.lam = cleared.lam
        self.zero = MultiPoly.zero(ring, k)
        self.one = MultiPoly.constant(ring, k, 1)
        self.identity = (0, tuple(self.one if i % (d + 1) == 0 else self.zero
                                  for i in range(d * d)))
        self._divisible_cache: dict = {}

    def canonical(self, e: int, A: tuple) -> tuple:
        D = self.D
        while e > 0:
            q = []
            for P in A:
                if P.is_zero():
                    q.append(P)
                    continue
                x = P.exact_div(D)
                if x is None:
                    return (e, A)
                q.append(x)
            A = tuple(q)
            e -= 1
        return (e, A)

    def from_cleared(self, T_i: tuple) -> tuple:
        return self.canonical(self.lam, T_i)

    def mul(self, a: tuple, b: tuple) -> tuple:
        d = self.d
        ea, A = a
        eb, B = b
        out = []
        for i in range(0, d * d, d):
            for j in range(d):
                acc = None
                for l in range(d):
                    x = A[i + l]
                    y = B[l * d + j]
                    if x.terms and y.terms:
                        t = x * y
                        acc = t if acc is None else acc + t
                out.append(acc if acc is not None else self.zero)
        return self.canonical(ea + eb, tuple(out))

    def is_identity(self, a) -> bool:
        return a == self.identity

    def render(self, a) -> list[list[str]]:
        e, A = a
        d = self.d
        if e == 0:
            return [[A[i * d + j].render() for j in range(d)] for i in range(d)]
        den = (self.D ** e).render()
        return [[f"({A[i * d + j].render()})/({den})" if not A[i * d + j].is_zero() else "0"
                  for j in range(d)] for i in range(d)]


# ---------------------------------------------------------------------- balls


@dataclass
class Ball:
    """The word ball ``S^radius`` with first-discovery word lengths.

    Elements are stored in BFS order, so the ball of any smaller radius is a
    prefix of ``elements``.
    """

    domain: object
    generators: list
    radius: int
    elements: list
    lengths: list[int]
    index: dict | None  # built on first membership test for restricted copies
    sphere_ends: list[int] = field(default_factory=list)
    budget: int = DEFAULT_BALL_BUDGET

    @classmethod
    def start(cls, domain, generators, budget: int | None = None) -> "Ball":
        ident = domain.identity
        return cls(domain=domain, generators=list(generators), radius=0, elements=[ident],
                   lengths=[0], index={ident: 0}, sphere_ends=[1],
                   budget=default_ball_budget() if budget is None else budget)

    def grow(self, n: int) -> "Ball":
        mul = self.domain.mul
        gens = [g for g in self.generators if not self.domain.is_identity(g)]
        elements, lengths, index = self.elements, self.lengths, self.index
        while self.radius < n:
            lo = self.sphere_ends[-2] if len(self.sphere_ends) > 1 else 0
            hi = self.sphere_ends[-1]
            r = self.radius + 1
            for pos in range(lo, hi):
                x = elements[pos]
                for g in gens:
                    y = mul(x, g)
                    if y not in index:
                        if len(elements) >= self.budget:
                            raise BallBudgetExceeded(
                                f"ball of radius {r} exceeds the budget of {self.budget} elements"
                            )
                        index[y] = len(elements)
                        elements.append(y)
                        lengths.append(r)
            self.sphere_ends.append(len(elements))
            self.radius = r
        return self

    def size(self, n: int | None = None) -> int:
        if n is None:
            n = self.radius
        if n > self.radius:
            raise ValueError(f"radius {n} not enumerated (have {self.radius})")
        return self.sphere_ends[n]

    def restricted(self, n: int) -> "Ball":
        """An independent copy of the sub-ball of radius n."""
        end = self.size(n)
        elems = self.elements[:end]
        return Ball(domain=self.domain, generators=self.generators, radius=n,
                    elements=elems, lengths=self.lengths[:end], index=None,
                    sphere_ends=self.sphere_ends[:n + 1], budget=self.budget)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        if self.index is None:
            self.index = {y: i for i, y in enumerate(self.elements)}
        return x in self.index

    def __iter__(self):
        return iter(self.elements)


# ---------------------------------------------------------------- the group


class LinearGroup:
    """A validated spec with its normalized generators and cached ball."""

    def __init__(self, spec: GroupSpec, ball_budget: int | None = None):
        self.spec = spec
        self.d = spec.d
        self.k = spec.k
        self.characteristic = spec.characteristic
        self.S = normalize_generating_set(spec.generators, spec.auto_symmetrize)
        self.cleared = clear_denominators(self.S, spec.characteristic)
        self.bounds = entry_bounds(self.cleared)
        self.ball_budget = default_ball_budget() if ball_budget is None else ball_budget
        if self.k == 0:
            self.domain = ScalarDomain(self.d, self.characteristic)
            self.gens = [self.domain.from_rational(M) for M in self.S]
        else:
            self.domain = LocalizedDomain(self.d, self.cleared, spec.ring, self.k)
            self.gens = [self.domain.from_cleared(T) for T in self.cleared.T]
        self._ball: Ball | None = None

    @classmethod
    def load(cls, source, ball_budget: int | None = None) -> "LinearGroup":
        return cls(load_group_spec(source), ball_budget)

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def s(self) -> int:
        return len(self.S)

    def ball(self, n: int, budget: int | None = None) -> Ball:
        if n < 0:
            raise ValueError("radius must be >= 0")
        if self._ball is None:
            self._ball = Ball.start(self.domain, self.gens,
                                    self.ball_budget if budget is None else budget)
        elif budget is not None:
            self._ball.budget = budget
        if self._ball.radius < n:
            self._ball.grow(n)
        return self._ball.restricted(n) if self._ball.radius > n else self._ball


def enumerate_ball(group: LinearGroup, n: int, budget: int | None = None) -> Ball:
    return group.ball(n, budget)


def growth_table(group: LinearGroup, n_max: int, budget: int | None = None) -> dict[int, int]:
    """``{n: b(n)}`` for ``0 <= n <= n_max``."""
    ball = group.ball(n_max, budget)
    return {n: ball.size(n) for n in range(n_max + 1)}


def entry_product(mat):
    """Product of the nonzero entries of a polynomial (or integer) matrix; 1 if none."""
    flat = [x for row in mat for x in row] if mat and isinstance(mat[0], (list, tuple)) else list(mat)
    acc = None
    for x in flat:
        if (x.is_zero() if isinstance(x, MultiPoly) else x == 0):
            continue
        acc = x if acc is None else acc * x
    if acc is None:
        sample = next((x for x in flat if isinstance(x, MultiPoly)), None)
        return MultiPoly.constant(sample.ring, sample.k, 1) if sample is not None else 1
    return acc


# ------------------------------------------------------------- reductions


class Reduction:
    """Ring homomorphism from the entry ring of a group onto a finite field.

    Characteristic 0 needs ``prime``; ``k >= 1`` needs a specialization
    (anything with ``field`` and raw ``assignment`` attributes) whose field
    contains F_p.
    """

    def __init__(self, group: LinearGroup, prime: int | None = None, specialization=None):
        self.group = group
        char = group.characteristic
        if char == 0:
            if prime is None:
                raise ValueError("characteristic 0 reduction needs a prime")
            self.p = prime
        else:
            if prime is not None and prime != char:
                raise ValueError(f"prime {prime} differs from characteristic {char}")
            self.p = char
        Fp = make_prime_field(self.p)
        self.specialization = specialization
        if specialization is not None:
            self.field = specialization.field
            if self.field.p != self.p:
                raise FieldMismatch("specialization field has the wrong characteristic")
            if len(specialization.assignment) != group.k:
                raise ValueError("specialization must assign every variable")
            self.point = tuple(specialization.assignment)
        else:
            if group.k:
                raise ValueError("groups with k >= 1 need a specialization")
            self.field = Fp if char == 0 else (group.spec.base_field or Fp)
            self.point = ()
        self._fp = Fp
        self._poly_cache: dict = {}
        self._pow_cache: dict = {}
        self._scale_cache: dict = {}
        if group.k:
            dval = self.poly(group.cleared.D)
            if self.field.is_zero(dval):
                raise DenominatorVanishes("the common denominator maps to zero")
            self._dinv = self.field.inv(dval)
        elif char == 0 and group.cleared.r % self.p == 0:
            raise DenominatorVanishes(f"p = {self.p} divides the denominator r = {group.cleared.r}")

    @property
    def order(self) -> int:
        return self.field.order

    def _var_power(self, i, e):
        key = (i, e)
        v = self._pow_cache.get(key)
        if v is None:
            v = self._pow_cache[key] = self.field.pow(self.point[i], e)
        return v

    def coefficient(self, c):
        L = self.field
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise DenominatorVanishes(f"{c} has denominator divisible by {self.p}")
            c = c.numerator * pow(c.denominator, -1, self.p)
        if isinstance(c, int):
            return L.lift(c % self.p, self._fp)
        return c  # already in F_p as a raw int for characteristic p rings

    def poly(self, P: MultiPoly):
        cached = self._poly_cache.get(P)
        if cached is not None:
            return cached
        L = self.field
        src = P.ring
        acc = L.zero
        for e, c in P.terms.items():
            v = L.lift(c % self.p, self._fp) if src is ZZ else L.lift(c, src)
            for i, x in enumerate(e):
                if x:
                    v = L.mul(v, self._var_power(i, x))
            acc = L.add(acc, v)
        self._poly_cache[P] = acc
        return acc

    def _dinv_power(self, e):
        v = self._scale_cache.get(e)
        if v is None:
            v = self._scale_cache[e] = self.field.pow(self._dinv, e)
        return v

    def element(self, g) -> tuple:
        """Raw image of a ball element (hashable key)."""
        if self.group.k == 0:
            p = self.p
            if self.group.domain.integral and self.field.base is None:
                return tuple(x % p for x in g)
            return tuple(self.coefficient(x) for x in g)
        e, A = g
        L = self.field
        vals = [self.poly(P) for P in A]
        if e:
            s = self._dinv_power(e)
            vals = [L.mul(v, s) for v in vals]
        return tuple(vals)

    def entry(self, x: RationalEntry):
        L = self.field
        num = self.poly(x.num) if x.k else self.coefficient(x.num.constant_value())
        den = self.poly(x.den) if x.k else self.coefficient(x.den.constant_value())
        if L.is_zero(den):
            raise DenominatorVanishes(f"denominator of {x.render()} maps to zero")
        return L.div(num, den)

    def matrix(self, M: RationalMatrix) -> tuple:
        return tuple(self.entry(x) for row in M for x in row)

    def identity(self) -> tuple:
        L = self.field
        d = self.group.d
        return tuple(L.one if i % (d + 1) == 0 else L.zero for i in range(d * d))


def reduce_matrix(mat, reduction: Reduction) -> list[list[FieldElement]]:
    """Entrywise image of a rational matrix or ball element as FieldElements."""
    if isinstance(mat, list) and mat and isinstance(mat[0], list):
        flat = reduction.matrix(mat)
    else:
        flat = reduction.element(mat)
    d = reduction.group.d
    L = reduction.field
    return [[FieldElement(L, flat[i * d + j]) for j in range(d)] for i in range(d)]
