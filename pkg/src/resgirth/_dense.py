"""Dense univariate polynomial kernels over a field object.

Polynomials are lists of raw field values, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``). ``F`` is anything exposing
the raw-value interface of :class:`resgirth.galois.TowerField`.
"""

from __future__ import annotations


def trim(F, a):
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def sub(F, a, b):
    return add(F, a, [F.neg(c) for c in b])


def mul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def scale(F, a, c):
    if F.is_zero(c):
        return []
    return trim(F, [F.mul(x, c) for x in a])


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    if len(a) <= db:
        return [], trim(F, a)
    quot = [F.zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv_lead)
        quot[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]))
    return trim(F, quot), trim(F, a[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = trim(F, a), trim(F, b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def powmod(F, a, e, m):
    result = [F.one]
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return mod(F, result, m) if len(m) > 1 else []


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def inverse_mod(F, a, m):
    """Inverse of ``a`` modulo ``m`` by extended Euclid; None if not a unit."""
    r0, r1 = list(m), trim(F, a)
    s0, s1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
    if len(r0) != 1:
        return None
    return mod(F, scale(F, s0, F.inv(r0[0])), m)


def is_irreducible(F, f):
    """Ben-Or test: no factor of degree <= deg/2, via gcd(x^(q^i) - x, f)."""
    n = len(f) - 1
    if n < 1:
        raise ValueError("irreducibility is undefined for constants")
    if n == 1:
        return True
    f = monic(F, f)
    x = [F.zero, F.one]
    h = x
    for _ in range(n // 2):
        h = powmod(F, h, F.order, f)
        g = gcd(F, sub(F, h, x), f)
        if len(g) != 1:
            return False
    return True


def iter_monic(F, m):
    """Monic polynomials of degree m, ascending by sum(index(c_i) * |F|**i)."""
    q = F.order
    for value in range(q**m):
        coeffs = []
        for _ in range(m):
            value, digit = divmod(value, q)
            coeffs.append(F.from_index(digit))
        coeffs.append(F.one)
        yield coeffs


def iter_monic_irreducibles(F, m):
    for f in iter_monic(F, m):
        if is_irreducible(F, f):
            yield f
