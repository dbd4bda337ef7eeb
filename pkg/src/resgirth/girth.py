"""Certified finite quotients and minimal congruence-quotient search.

Two routes bound the residual girth from above:

* certification: reduce modulo a prime from a Bertrand interval
  (characteristic 0), then specialize the variables so that every entry of
  ``y - 1`` for ``y`` in the radius-2n ball survives, with field size
  bounds that are exponential in n;
* probing: scan primes, or finite fields and specializations, in
  ascending order until the radius-n ball injects.

Both routes check injectivity on the actual ball.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import count, islice, product
from typing import Iterator

import numpy as np

from .errors import (
    BallBudgetExceeded,
    DegenerateWindow,
    DenominatorVanishes,
    SearchBudgetExceeded,
)
from .galois import TowerField, canonical_extension, make_prime_field
from .matgroup import Ball, LinearGroup, Reduction
from .numbers import iter_primes, prime_power
from .poly.multi import ZZ, MultiPoly, reduce_coefficients_mod_p
from .survival import Specialization, survive_multivariate

DEFAULT_SEARCH_BUDGET = 1_000_000
DEFAULT_IMAGE_BUDGET = 200_000


def general_linear_order(q: int, d: int) -> int:
    """``|GL_d(F_q)| = prod_{i<d} (q^d - q^i)``."""
    if q < 2 or d < 1:
        raise ValueError("need q >= 2 and d >= 1")
    out = 1
    qd = q**d
    for i in range(d):
        out *= qd - q**i
    return out


# ------------------------------------------------------------ injectivity


def verify_injectivity(ball: Ball, reduction: Reduction, method: str = "pairwise") -> bool:
    """Whether the reduction is injective on ``ball``.

    ``pairwise`` hashes the images of the ball itself. ``kernel`` checks
    that no nontrivial element of the ball of twice the radius maps to the
    identity, which is equivalent.
    """
    key = reduction.element
    if method == "pairwise":
        seen = set()
        for g in ball.elements:
            img = key(g)
            if img in seen:
                return False
            seen.add(img)
        return True
    if method == "kernel":
        group = reduction.group
        big = group.ball(2 * ball.radius)
        ident = reduction.identity()
        is_id = group.domain.is_identity
        return not any(key(g) == ident for g in big.elements if not is_id(g))
    raise ValueError(f"unknown method {method!r}")


# ------------------------------------------------------------ constraints


@dataclass
class ConstraintSet:
    n: int
    polys: list[MultiPoly]
    degree_bound: int  # 2 d^2 m n s^(2n) + delta, for the assembled product
    product: MultiPoly | None = None

    def assemble(self) -> MultiPoly:
        if self.product is None:
            acc = self.polys[0]
            for P in self.polys[1:]:
                acc = acc * P
            self.product = acc
        return self.product


def _degree_bound(group: LinearGroup, n: int) -> int:
    b = group.bounds
    return 2 * group.d**2 * b.m * n * b.s ** (2 * n) + b.delta


def constraint_polynomials(group: LinearGroup, n: int, budget: int | None = None) -> ConstraintSet:
    """Nonzero entries of ``y - D^(2n*lam) * 1`` for ``y != D^(2n*lam) * 1`` in T^(2n), plus Q.

    ``T^(2n)`` is the radius-2n ball scaled by ``D^(2n*lam)``; entries are
    polynomials over Z (characteristic 0) or F_p.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ball = group.ball(2 * n, budget)
    cleared = group.cleared
    ring, k, d = group.spec.ring, group.k, group.d
    D = cleared.D
    top = 2 * n * cleared.lam
    dpow = [MultiPoly.constant(ring, k, 1)]
    for _ in range(top):
        dpow.append(dpow[-1] * D)
    scaled_one = dpow[top]
    seen: dict[MultiPoly, None] = {}

    def add(P):
        if not P.is_zero() and P not in seen:
            seen[P] = None

    add(cleared.Q)
    is_id = group.domain.is_identity
    for g in ball.elements:
        if is_id(g):
            continue
        if k == 0:
            rt = D.constant_value() ** top if ring is ZZ else 1
            for i, x in enumerate(g):
                v = x * rt - (rt if i % (d + 1) == 0 else 0)
                if ring is ZZ:
                    assert getattr(v, "denominator", 1) == 1
                    add(MultiPoly.constant(ring, 0, int(v)))
                else:
                    add(MultiPoly.constant(ring, 0, v % ring.p))
        else:
            e, A = g
            factor = dpow[top - e]
            for i, P in enumerate(A):
                Y = P * factor
                if i % (d + 1) == 0:
                    Y = Y - scaled_one
                add(Y)
    return ConstraintSet(n=n, polys=list(seen), degree_bound=_degree_bound(group, n))


# ------------------------------------------------------------ certificates


@dataclass
class Certificate:
    n: int
    characteristic: int
    injective: bool
    field: TowerField
    field_order: int
    gl_order: int
    field_bound: int  # q (4 d^2 m n s^(2n) + 2 delta)^k, with q = p_n in characteristic 0 and the base at least 2
    gl_bound: int  # field_bound^(d^2)
    paper_bound: int  # field_bound in characteristic p, gl_bound in characteristic 0
    specialization: Specialization | None = None
    prime: int | None = None
    interval: tuple[int, int] | None = None
    B: int | None = None
    constraint_count: int = 0
    degree_bound: int = 0
    kernel_agrees: bool | None = None

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "characteristic": self.characteristic,
            "injective": self.injective,
            "field_order": self.field_order,
            "field": repr(self.field),
            "gl_order": self.gl_order,
            "paper_bound": self.paper_bound,
            "field_bound": self.field_bound,
            "gl_bound": self.gl_bound,
            "constraint_count": self.constraint_count,
        }
        if self.prime is not None:
            out["prime"] = self.prime
            out["interval"] = list(self.interval)
            out["B"] = self.B
        if self.specialization is not None:
            out["specialization"] = self.specialization.describe()
        return out


def _field_bound(group: LinearGroup, n: int, q: int) -> int:
    # (2N)^k q with N the degree bound of x'_n; N = 0 (constant constraints) counts as 1
    return q * (2 * max(_degree_bound(group, n), 1)) ** group.k


def _specialize_constraints(group, polys, field: TowerField, product_mode: bool):
    polys = [P.change_ring(field) for P in polys]
    if product_mode:
        acc = polys[0]
        for P in polys[1:]:
            acc = acc * P
        polys = [acc]
    spec, _ = survive_multivariate(polys)
    return spec


def certify_char_p(group: LinearGroup, n: int, *, product_mode: bool = False,
                   budget: int | None = None, cross_check: bool = False) -> Certificate:
    """Quotient ``GL_d(F_n)`` into which S^n injects, for characteristic p."""
    if group.characteristic == 0:
        raise ValueError("certify_char_p needs a group in characteristic p")
    if n < 1:
        raise ValueError("n must be >= 1")
    F = group.spec.base_field
    spec = None
    count_ = 0
    if group.k:
        cons = constraint_polynomials(group, n, budget)
        count_ = len(cons.polys)
        spec = _specialize_constraints(group, cons.polys, F, product_mode)
    red = Reduction(group, specialization=spec)
    ball = group.ball(n, budget)
    injective = verify_injectivity(ball, red)
    fb = _field_bound(group, n, F.order)
    order = red.field.order
    if order > fb:
        raise AssertionError(f"certified field of order {order} exceeds the bound {fb}")
    cert = Certificate(
        n=n, characteristic=group.characteristic, injective=injective, field=red.field,
        field_order=order, gl_order=general_linear_order(order, group.d),
        field_bound=fb, gl_bound=fb ** (group.d**2), paper_bound=fb,
        specialization=spec, constraint_count=count_, degree_bound=_degree_bound(group, n),
    )
    if cross_check:
        cert.kernel_agrees = verify_injectivity(ball, red, "kernel") == injective
    return cert


def bertrand_B(group: LinearGroup, n: int) -> int:
    """``d^(2n-1) (R M)^(2n)``, the coefficient bound for entries of T^(2n)."""
    b = group.bounds
    return group.d ** (2 * n - 1) * (b.R * b.M) ** (2 * n)


def certify_char_zero(group: LinearGroup, n: int, *, product_mode: bool = False,
                      budget: int | None = None, cross_check: bool = False) -> Certificate:
    """Reduce mod the least admissible prime in ``[2B, 4B]``, then specialize."""
    if group.characteristic != 0:
        raise ValueError("certify_char_zero needs a group in characteristic 0")
    if n < 1:
        raise ValueError("n must be >= 1")
    cleared = group.cleared
    B = bertrand_B(group, n)
    lo, hi = 2 * B, 4 * B
    cons = constraint_polynomials(group, n, budget) if group.k else None

    def admissible(p):
        if cleared.r % p == 0:
            return False
        if reduce_coefficients_mod_p(cleared.Q, p).is_zero():
            return False
        if cons is not None:
            return not any(reduce_coefficients_mod_p(P, p).is_zero() for P in cons.polys)
        return True

    prime = None
    while prime is None:
        prime = next((p for p in iter_primes(lo, hi) if admissible(p)), None)
        if prime is None:
            lo, hi = hi, 2 * hi
    spec = None
    if cons is not None:
        Fp = make_prime_field(prime)
        reduced = [reduce_coefficients_mod_p(P, prime) for P in cons.polys]
        spec = _specialize_constraints(group, reduced, Fp, product_mode)
    red = Reduction(group, prime=prime, specialization=spec)
    ball = group.ball(n, budget)
    injective = verify_injectivity(ball, red)
    fb = _field_bound(group, n, prime)
    order = red.field.order
    if order > fb:
        raise AssertionError(f"certified field of order {order} exceeds the bound {fb}")
    gl = general_linear_order(order, group.d)
    gb = fb ** (group.d**2)
    cert = Certificate(
        n=n, characteristic=0, injective=injective, field=red.field, field_order=order,
        gl_order=gl, field_bound=fb, gl_bound=gb, paper_bound=gb, specialization=spec,
        prime=prime, interval=(lo, hi), B=B,
        constraint_count=len(cons.polys) if cons else 0, degree_bound=_degree_bound(group, n),
    )
    if cross_check:
        cert.kernel_agrees = verify_injectivity(ball, red, "kernel") == injective
    return cert


def certify(group: LinearGroup, n: int, **kw) -> Certificate:
    if group.characteristic == 0:
        return certify_char_zero(group, n, **kw)
    return certify_char_p(group, n, **kw)


def log_bound_rate(group: LinearGroup) -> float:
    """Constant C with ``log(field_bound(n)) / n <= C`` for every n >= 1 (characteristic p)."""
    b = group.bounds
    q = group.spec.base_field.order
    return math.log(q) + group.k * (
        math.log(max(4 * group.d**2 * b.m + 2 * b.delta, 2)) + 1 + 2 * math.log(b.s)
    )


# ------------------------------------------------------------------ probing


@dataclass
class _Point:
    field: TowerField
    assignment: tuple

    def describe(self) -> dict:
        return {
            "field_order": self.field.order,
            "field": repr(self.field),
            "assignment": {f"t{i + 1}": self.field.render(v) for i, v in enumerate(self.assignment)},
        }


@dataclass
class ProbeResult:
    n: int
    kind: str  # "prime" or "field"
    param: int  # the prime, or the field order
    field_order: int
    image_order: int
    image_order_exact: bool
    gl_order: int
    ball_size: int
    candidates_tested: int
    point: dict | None = field(default=None)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "kind": self.kind,
            "param": self.param,
            "field_order": self.field_order,
            "image_order": self.image_order,
            "image_order_exact": self.image_order_exact,
            "gl_order": self.gl_order,
            "ball_size": self.ball_size,
            "candidates_tested": self.candidates_tested,
        }
        if self.point is not None:
            out["specialization"] = self.point
        return out


def _prime_powers(start: int) -> Iterator[int]:
    for q in count(max(start, 2)):
        if prime_power(q) is not None:
            yield q


def _candidates(group: LinearGroup, start: int) -> Iterator[tuple[int, object]]:
    """``(param, reduction factory)`` pairs in scan order."""
    char, k = group.characteristic, group.k
    if char == 0 and k == 0:
        r = group.cleared.r
        for p in iter_primes(max(start, 2)):
            if r % p:
                yield p, (lambda p=p: Reduction(group, prime=p))
        return
    if char:
        base = group.spec.base_field
        orders = (base.order**j for j in count(1))
        fields = ((q, (lambda j=j: canonical_extension(base, j))) for j, q in
                  zip(count(1), orders))
    else:
        r = group.cleared.r

        def gen():
            for q in _prime_powers(start):
                p, e = prime_power(q)
                if r % p == 0:
                    continue
                yield q, (lambda p=p, e=e: canonical_extension(make_prime_field(p), e))

        fields = gen()
    for q, make_field in fields:
        if q < start:
            continue
        if k == 0:
            F = make_field()
            yield q, (lambda F=F: Reduction(group, specialization=_Point(F, ())))
            continue
        F = make_field()
        for point in product(list(F.raw_elements()), repeat=k):
            yield q, (lambda F=F, point=point: Reduction(
                group, prime=F.p, specialization=_Point(F, point)))


def _try(factory, ball):
    try:
        red = factory()
    except DenominatorVanishes:
        return None
    return red if verify_injectivity(ball, red) else None


def _prime_image_order(gens, ident, d, p, budget):
    """Breadth-first closure over F_p, one numpy batch per frontier and generator."""
    mats = [np.array(g, dtype=np.int64).reshape(d, d) for g in gens]
    frontier = np.array(ident, dtype=np.int64).reshape(1, d, d)
    seen = {frontier[0].tobytes()}
    while len(frontier):
        fresh = []
        for g in mats:
            prod = np.matmul(frontier, g) % p
            for m in prod:
                key = m.tobytes()
                if key not in seen:
                    if len(seen) >= budget:
                        return None
                    seen.add(key)
                    fresh.append(m)
        frontier = np.array(fresh) if fresh else frontier[:0]
    return len(seen)


def image_order(reduction: Reduction, budget: int = DEFAULT_IMAGE_BUDGET) -> int | None:
    """Order of the subgroup generated by the reduced generators, or None past ``budget``."""
    group = reduction.group
    F = reduction.field
    d = group.d
    gens = {reduction.element(g) for g in group.gens}
    ident = reduction.identity()
    gens.discard(ident)
    gens = sorted(gens)
    prime = F.base is None
    if prime and d * F.p * F.p < 2**62:
        return _prime_image_order(gens, ident, d, F.p, budget)
    p = F.p

    def mul(a, b):
        out = []
        for i in range(0, d * d, d):
            for j in range(d):
                if prime:
                    out.append(sum(a[i + l] * b[l * d + j] for l in range(d)) % p)
                else:
                    acc = F.zero
                    for l in range(d):
                        acc = F.add(acc, F.mul(a[i + l], b[l * d + j]))
                    out.append(acc)
        return tuple(out)

    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    if len(seen) >= budget:
                        return None
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def probe_minimal_quotient(group: LinearGroup, n: int, *, start: int = 0, threads: int = 1,
                           search_budget: int = DEFAULT_SEARCH_BUDGET,
                           ball_budget: int | None = None,
                           image_budget: int = DEFAULT_IMAGE_BUDGET) -> ProbeResult:
    """Smallest prime (or field, then specialization) under which S^n injects.

    ``start`` skips parameters below it; by monotonicity in n a previous
    radius's answer is a valid start.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ball = group.ball(n, ball_budget)
    cands = _candidates(group, start)
    tested = 0
    found = None
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while found is None:
            batch = list(islice(cands, max(threads, 1)))
            if not batch:
                raise SearchBudgetExceeded("candidate stream exhausted")
            if tested + len(batch) > search_budget:
                raise SearchBudgetExceeded(
                    f"no injective quotient among the first {search_budget} candidates"
                )
            if pool is None:
                results = [_try(f, ball) for _, f in batch]
            else:
                results = list(pool.map(lambda c: _try(c[1], ball), batch))
            for (param, _), red in zip(batch, results):
                tested += 1
                if red is not None:
                    found = (param, red)
                    break
    finally:
        if pool is not None:
            pool.shutdown()
    param, red = found
    if not verify_injectivity(ball, red):
        raise AssertionError("probe result failed re-verification")
    order = red.field.order
    gl = general_linear_order(order, group.d)
    img = image_order(red, image_budget)
    spec = red.specialization
    return ProbeResult(
        n=n, kind="prime" if group.characteristic == 0 and group.k == 0 else "field",
        param=param, field_order=order, image_order=img if img is not None else gl,
        image_order_exact=img is not None, gl_order=gl, ball_size=len(ball),
        candidates_tested=tested,
        point=spec.describe() if spec is not None and group.k else None,
    )


# ------------------------------------------------------------------- tables


def fit_growth_exponent(table: dict[int, float], window: tuple[int, int] | None = None) -> float:
    """Least-squares slope of log(value) against log(n) over ``window`` (inclusive)."""
    pts = sorted(table.items())
    if window is not None:
        lo, hi = window
        pts = [(n, v) for n, v in pts if lo <= n <= hi]
    if len(pts) < 3:
        raise DegenerateWindow(f"need at least 3 points, got {len(pts)}")
    if any(n <= 0 or v <= 0 for n, v in pts):
        raise DegenerateWindow("all n and values must be positive")
    x = np.log([float(n) for n, _ in pts])
    y = np.log([float(v) for _, v in pts])
    slope = float(np.polyfit(x, y, 1)[0])
    return 0.0 if abs(slope) < 1e-12 else slope


CSV_COLUMNS = ("n", "ball_size", "probe_param", "probe_image_order",
               "cert_field_order", "cert_paper_bound", "cert_gl_order")


def probe_table(group: LinearGroup, n_max: int, *, certify_rows: bool = True,
                n_min: int = 1, threads: int = 1, search_budget: int = DEFAULT_SEARCH_BUDGET,
                ball_budget: int | None = None, product_mode: bool = False) -> list[dict]:
    """One row per radius with probe and (optionally) certificate data."""
    rows = []
    start = 0
    for n in range(n_min, n_max + 1):
        pr = probe_minimal_quotient(group, n, start=start, threads=threads,
                                    search_budget=search_budget, ball_budget=ball_budget)
        start = pr.param
        row = {"n": n, "ball_size": pr.ball_size, "probe_param": pr.param,
               "probe_image_order": pr.image_order,
               "cert_field_order": None, "cert_paper_bound": None, "cert_gl_order": None}
        if certify_rows:
            cert = certify(group, n, budget=ball_budget, product_mode=product_mode)
            row.update(cert_field_order=cert.field_order, cert_paper_bound=cert.paper_bound,
                       cert_gl_order=cert.gl_order)
        rows.append(row)
    return rows


__all__ = [
    "BallBudgetExceeded",
    "Certificate",
    "ConstraintSet",
    "ProbeResult",
    "bertrand_B",
    "certify",
    "certify_char_p",
    "certify_char_zero",
    "constraint_polynomials",
    "fit_growth_exponent",
    "general_linear_order",
    "image_order",
    "log_bound_rate",
    "probe_minimal_quotient",
    "probe_table",
    "verify_injectivity",
]
