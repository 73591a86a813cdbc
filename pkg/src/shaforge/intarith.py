"""Exact integer services: primality, factorization, integer roots."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import FactorTooHard

TRIAL_LIMIT = 10**6
DEFAULT_EFFORT = 30

# Miller-Rabin with the first 13 primes as witnesses is exact below this bound.
_DETERMINISTIC_BOUND = 3317044064679887385961981
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_RANDOM_ROUNDS = 64  # 4**-64 == 2**-128


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for q in range(2, math.isqrt(limit) + 1):
        if flags[q]:
            flags[q * q :: q] = bytes(len(range(q * q, limit + 1, q)))
    return [i for i, f in enumerate(flags) if f]


@lru_cache(maxsize=1)
def small_primes() -> tuple[int, ...]:
    return tuple(_sieve(TRIAL_LIMIT))


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(q: int) -> bool:
    """Miller-Rabin; exact below 3.3e24, error below 2**-128 above it."""
    if q < 2:
        return False
    for w in _WITNESSES:
        if q % w == 0:
            return q == w
    d, s = q - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if q < _DETERMINISTIC_BOUND:
        witnesses = _WITNESSES
    else:
        rng = random.Random(q)
        witnesses = [rng.randrange(2, q - 1) for _ in range(_RANDOM_ROUNDS)]
    return all(_strong_probable_prime(q, a, d, s) for a in witnesses)


def isqrt(v: int) -> tuple[int, bool]:
    if v < 0:
        raise ValueError("isqrt of a negative number")
    r = math.isqrt(v)
    return r, r * r == v


def iroot(v: int, k: int) -> tuple[int, bool]:
    """Floor of the k-th root of v >= 0 and whether it is exact."""
    if v < 2:
        return v, True
    r = 1 << ((v.bit_length() + k - 1) // k)  # >= the root
    while True:
        s = ((k - 1) * r + v // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    return r, r**k == v


def perfect_power(v: int) -> tuple[int, int]:
    """Return (b, e) with v == b**e and e maximal."""
    best = (v, 1)
    for e in range(2, v.bit_length() + 1):
        b, exact = iroot(v, e)
        if b < 2:
            break
        if exact:
            best = (b, e)
    return best


def _brent(n: int, c: int, y: int, max_iter: int | None) -> int | None:
    """One Brent-rho run; returns a proper factor, n on cycle failure, None on timeout."""
    m = 128
    g = r = q = 1
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        steps += r
        if max_iter is not None and steps > max_iter and g == 1:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def rho_split(n: int, max_iter: int | None = None) -> int | None:
    """Find a nontrivial factor of the odd composite n, seeded by n itself."""
    rng = random.Random(n)
    budget = max_iter
    while True:
        c = rng.randrange(1, n - 1)
        y = rng.randrange(0, n)
        g = _brent(n, c, y, budget)
        if g is None:
            return None
        if 1 < g < n:
            return g


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]

    def product(self) -> int:
        out = 1
        for q, e in self.factors:
            out *= q**e
        return out

    def valuation(self, q: int) -> int:
        for r, e in self.factors:
            if r == q:
                return e
        return 0


def _split_cofactor(n: int, effort_bound: int, out: dict[int, int], mult: int) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + mult
        return
    b, e = perfect_power(n)
    if e > 1:
        _split_cofactor(b, effort_bound, out, mult * e)
        return
    if len(str(n)) <= effort_bound:
        g = rho_split(n)
    else:
        # iterations needed to find a factor of half the effort bound, with slack
        g = rho_split(n, max_iter=20 * 10 ** (effort_bound // 4))
        if g is None:
            raise FactorTooHard(n)
    _split_cofactor(g, effort_bound, out, mult)
    _split_cofactor(n // g, effort_bound, out, mult)


@lru_cache(maxsize=4096)
def _factor_positive(v: int, effort_bound: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    n = v
    for q in small_primes():
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out[q] = e
    if n > 1:
        if n <= TRIAL_LIMIT**2:
            out[n] = out.get(n, 0) + 1
        else:
            _split_cofactor(n, effort_bound, out, 1)
    return tuple(sorted(out.items()))


def factor(v: int, effort_bound: int = DEFAULT_EFFORT) -> Factorization:
    """Complete factorization of |v|; raises FactorTooHard past the effort bound."""
    if v == 0:
        raise ValueError("cannot factor 0")
    if effort_bound < 20:
        raise ValueError("effort_bound must be at least 20 digits")
    return Factorization(v, _factor_positive(abs(v), effort_bound))


def valuation(v: int, q: int) -> int:
    if v == 0:
        return 10**9
    e = 0
    while v % q == 0:
        v //= q
        e += 1
    return e


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a mod the prime p, or None (Tonelli-Shanks)."""
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def primes_up_to(limit: int):
    """All primes <= limit as a numpy int64 array."""
    import numpy as np

    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(limit) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    return np.flatnonzero(flags).astype(np.int64)
