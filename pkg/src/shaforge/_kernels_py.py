"""Reference implementations of the point-counting kernels (numpy + Python ints).

The compiled module ``_kernels`` exposes the same three functions; ``kernels``
picks whichever is importable.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .intarith import factor, sqrt_mod

BACKEND = "python"


def count_exhaustive(p: int, b2: int, b4: int, b6: int) -> int:
    """#E(F_p) for odd p from y'^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 (coefficients mod p)."""
    chi = np.full(p, -1, dtype=np.int64)
    ys = np.arange((p + 1) // 2, dtype=np.int64)
    chi[ys * ys % p] = 1
    chi[0] = 0
    x = np.arange(p, dtype=np.int64)
    x2 = x * x % p
    x3 = x2 * x % p
    f = (4 * x3 + (b2 % p) * x2 % p + (2 * b4 % p) * x % p + b6 % p) % p
    return p + 1 + int(chi[f].sum())


# ---- baby-step giant-step with Mestre's twist trick -------------------------


def _add(P, Q, a, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


def _mul(n, P, a, p):
    out = None
    while n:
        if n & 1:
            out = _add(out, P, a, p)
        P = _add(P, P, a, p)
        n >>= 1
    return out


def _neg(P, p):
    return None if P is None else (P[0], (-P[1]) % p)


def _random_point(a, b, p, rng):
    while True:
        x = rng.randrange(p)
        f = (x * x * x + a * x + b) % p
        y = sqrt_mod(f, p)
        if y is not None:
            return x, y


def _killing_multiple(P, L, lo, hi, a, p):
    """Some M in [lo, hi] with L | M and M*P == O, or None."""
    start = -(-lo // L) * L
    if start > hi:
        return None
    J = (hi - start) // L
    Q = _mul(L, P, a, p)
    R = _mul(start, P, a, p)
    if Q is None:
        return start if R is None else None
    s = math.isqrt(J) + 1
    baby = {}
    T = None
    for i in range(s):
        # T = i*Q; R + (k*s + i)*Q == O  <=>  R + k*s*Q == -(i*Q)
        key = None if T is None else T[0]
        baby.setdefault(key, []).append((i, T))
        T = _add(T, Q, a, p)
    giant = _mul(s, Q, a, p)
    G = R
    for k in range(s + 1):
        key = None if G is None else G[0]
        for i, T in baby.get(key, ()):
            if G == _neg(T, p) or (G is None and T is None):
                j = k * s + i
                if j <= J:
                    return start + j * L
        G = _add(G, giant, a, p)
    return None


def _point_order(P, M, a, p):
    order = M
    for q, _ in factor(M).factors:
        while order % q == 0 and _mul(order // q, P, a, p) is None:
            order //= q
    return order


def count_bsgs(p: int, a: int, b: int) -> int:
    """#E(F_p) for y^2 = x^3 + a x + b, p > 229 prime, by BSGS on E and its twist."""
    width = math.isqrt(4 * p)
    lo, hi = p + 1 - width, p + 1 + width
    d = 2
    while pow(d, (p - 1) // 2, p) == 1:
        d += 1
    ta, tb = a * d * d % p, b * d * d * d % p
    rng = random.Random(p)
    L1 = L2 = 1
    for attempt in range(200):
        cands = [M for M in range(-(-lo // L1) * L1, hi + 1, L1) if (2 * p + 2 - M) % L2 == 0]
        if len(cands) == 1:
            return cands[0]
        if attempt % 2 == 0:
            P = _random_point(a, b, p, rng)
            M = _killing_multiple(P, L1, lo, hi, a, p)
            L1 = math.lcm(L1, _point_order(P, M, a, p))
        else:
            P = _random_point(ta, tb, p, rng)
            M = _killing_multiple(P, L2, lo, hi, ta, p)
            L2 = math.lcm(L2, _point_order(P, M, ta, p))
    raise RuntimeError(f"BSGS failed to isolate the group order at p={p}")


def ap_good_batch(primes, b2, b4, b6, a, b, threshold: int):
    """a_p for good odd primes; arrays hold coefficients already reduced mod each prime."""
    out = np.empty(len(primes), dtype=np.int64)
    for k in range(len(primes)):
        p = int(primes[k])
        if p < threshold or p <= 229:
            n = count_exhaustive(p, int(b2[k]), int(b4[k]), int(b6[k]))
        else:
            n = count_bsgs(p, int(a[k]), int(b[k]))
        out[k] = p + 1 - n
    return out
