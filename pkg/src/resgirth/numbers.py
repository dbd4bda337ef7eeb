"""Exact integer utilities: factorization, Moebius function, primality, prime search."""

from __future__ import annotations

import random
from typing import Iterator

from .errors import NoPrimeInInterval

# Deterministic Miller-Rabin witnesses; correct for n < 3.3e24, which covers 2^64.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 1 << 64
MR_ROUNDS = 64
MR_SEED = 20140821


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError(f"mobius is defined for n >= 1, got {n}")
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def _mr_witness(a: int, d: int, s: int, n: int) -> bool:
    """True when ``a`` proves ``n`` composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Miller-Rabin; exact below 2^64, 64 seeded random rounds above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _DETERMINISTIC_LIMIT:
        bases = _DETERMINISTIC_BASES
    else:
        rng = random.Random(MR_SEED)
        bases = [rng.randrange(2, n - 1) for _ in range(MR_ROUNDS)]
    return not any(_mr_witness(a, d, s, n) for a in bases)


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``q == p**e``, or None when q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    ((p, e),) = fac.items()
    return p, e


def iter_primes(lo: int, hi: int | None = None) -> Iterator[int]:
    """Primes in ``[lo, hi]`` ascending; unbounded when ``hi`` is None."""
    n = max(lo, 2)
    while hi is None or n <= hi:
        if is_prime(n):
            yield n
        n += 1


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    return next(iter_primes(n))


def find_prime_in_interval(lo: int, hi: int) -> int:
    """Smallest prime p with lo <= p <= hi."""
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    for p in iter_primes(lo, hi):
        return p
    raise NoPrimeInInterval(f"no prime in [{lo}, {hi}]")
