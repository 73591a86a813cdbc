# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled point-counting kernels; same contract as ``_kernels_py``.

All arithmetic is on signed 64-bit integers, so primes must stay below 2**31.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, free
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

import numpy as np

BACKEND = "cython"

cdef int64_t P_LIMIT = 1 << 31


cdef struct Pt:
    int64_t x
    int64_t y
    bint inf


cdef inline int64_t _mod(int64_t a, int64_t p) nogil:
    a %= p
    return a + p if a < 0 else a


cdef int64_t _powmod(int64_t b, int64_t e, int64_t p) nogil:
    cdef int64_t r = 1
    b = _mod(b, p)
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


cdef int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, nt = 1, r = p, nr = _mod(a, p), q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    return _mod(t, p)


cdef int64_t _sqrtmod(int64_t a, int64_t p) nogil:
    """Square root of a mod p, or -1 if a is a non-residue."""
    cdef int64_t q, s, z, m, c, t, r, i, t2, b
    a = _mod(a, p)
    if a == 0:
        return 0
    if _powmod(a, (p - 1) // 2, p) != 1:
        return -1
    if p % 4 == 3:
        return _powmod(a, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _powmod(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m = s
    c = _powmod(z, q, p)
    t = _powmod(a, q, p)
    r = _powmod(a, (q + 1) // 2, p)
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = _powmod(c, (<int64_t> 1) << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return r


cdef inline Pt _inf() nogil:
    cdef Pt P
    P.x = 0
    P.y = 0
    P.inf = True
    return P


cdef Pt _add(Pt P, Pt Q, int64_t a, int64_t p) nogil:
    cdef int64_t lam, x3
    cdef Pt R
    if P.inf:
        return Q
    if Q.inf:
        return P
    if P.x == Q.x:
        if (P.y + Q.y) % p == 0:
            return _inf()
        lam = (3 * (P.x * P.x % p) + a) % p * _inv(2 * P.y, p) % p
    else:
        lam = _mod(Q.y - P.y, p) * _inv(Q.x - P.x, p) % p
    x3 = _mod(lam * lam - P.x - Q.x, p)
    R.x = x3
    R.y = _mod(lam * _mod(P.x - x3, p) - P.y, p)
    R.inf = False
    return R


cdef Pt _mul(int64_t n, Pt P, int64_t a, int64_t p) nogil:
    cdef Pt out = _inf()
    while n > 0:
        if n & 1:
            out = _add(out, P, a, p)
        P = _add(P, P, a, p)
        n >>= 1
    return out


cdef uint64_t _next(uint64_t* state) nogil:
    # xorshift64*
    cdef uint64_t x = state[0]
    x ^= x >> 12
    x ^= x << 25
    x ^= x >> 27
    state[0] = x
    return x * 2685821657736338717ULL


cdef Pt _random_point(int64_t a, int64_t b, int64_t p, uint64_t* state) nogil:
    cdef int64_t x, f, y
    cdef Pt P
    while True:
        x = <int64_t> (_next(state) % <uint64_t> p)
        f = _mod((x * x % p) * x % p + a * x % p + b, p)
        y = _sqrtmod(f, p)
        if y >= 0:
            P.x = x
            P.y = y
            P.inf = False
            return P


cdef int64_t _killing_multiple(Pt P, int64_t L, int64_t lo, int64_t hi, int64_t a, int64_t p):
    cdef int64_t start = ((lo + L - 1) // L) * L
    cdef int64_t J, s, i, k, j, key
    cdef Pt Q, R, T, G, giant
    cdef unordered_map[int64_t, vector[int64_t]] baby
    if start > hi:
        return -1
    J = (hi - start) // L
    Q = _mul(L, P, a, p)
    R = _mul(start, P, a, p)
    if Q.inf:
        return start if R.inf else -1
    s = 1
    while s * s <= J:
        s += 1
    T = _inf()
    for i in range(s):
        key = -1 if T.inf else T.x
        baby[key].push_back(i)
        T = _add(T, Q, a, p)
    giant = _mul(s, Q, a, p)
    G = R
    for k in range(s + 1):
        key = -1 if G.inf else G.x
        if baby.count(key):
            for i in baby[key]:
                j = k * s + i
                if j <= J and _mul(start + j * L, P, a, p).inf:
                    return start + j * L
        G = _add(G, giant, a, p)
    return -1


cdef int64_t _point_order(Pt P, int64_t M, int64_t a, int64_t p):
    cdef int64_t order = M, n = M, q = 2
    while q * q <= n:
        if n % q == 0:
            while n % q == 0:
                n //= q
            while order % q == 0 and _mul(order // q, P, a, p).inf:
                order //= q
        q += 1
    if n > 1:
        while order % n == 0 and _mul(order // n, P, a, p).inf:
            order //= n
    return order


cdef int64_t _gcd(int64_t x, int64_t y) nogil:
    while y:
        x, y = y, x % y
    return x


def count_bsgs(int64_t p, int64_t a, int64_t b):
    """#E(F_p) for y^2 = x^3 + a x + b, p > 229 prime, by BSGS on E and its twist."""
    if p >= P_LIMIT or p <= 229:
        raise ValueError("compiled BSGS needs 229 < p < 2**31")
    cdef int64_t width = 0, lo, hi, d, ta, tb, L1 = 1, L2 = 1, M, cnt, last, attempt
    cdef uint64_t state = <uint64_t> p * 0x9E3779B97F4A7C15ULL + 1
    cdef Pt P
    while (width + 1) * (width + 1) <= 4 * p:
        width += 1
    lo = p + 1 - width
    hi = p + 1 + width
    a = _mod(a, p)
    b = _mod(b, p)
    d = 2
    while _powmod(d, (p - 1) // 2, p) == 1:
        d += 1
    ta = a * (d * d % p) % p
    tb = b * (d * d % p * d % p) % p
    for attempt in range(200):
        cnt = 0
        M = ((lo + L1 - 1) // L1) * L1
        while M <= hi:
            if (2 * p + 2 - M) % L2 == 0:
                cnt += 1
                last = M
            M += L1
        if cnt == 1:
            return last
        if attempt % 2 == 0:
            P = _random_point(a, b, p, &state)
            M = _killing_multiple(P, L1, lo, hi, a, p)
            if M < 0:
                raise RuntimeError("no killing multiple found")
            M = _point_order(P, M, a, p)
            L1 = L1 // _gcd(L1, M) * M
        else:
            P = _random_point(ta, tb, p, &state)
            M = _killing_multiple(P, L2, lo, hi, ta, p)
            if M < 0:
                raise RuntimeError("no killing multiple found")
            M = _point_order(P, M, ta, p)
            L2 = L2 // _gcd(L2, M) * M
    raise RuntimeError(f"BSGS failed to isolate the group order at p={p}")


cdef int64_t _count_exhaustive(int64_t p, int64_t b2, int64_t b4, int64_t b6) except -1:
    # f(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 walked by finite differences: additions only
    cdef signed char* chi = <signed char*> malloc(p)
    cdef int64_t x, sq, step, f, d1, d2, d3, s = 0
    if chi == NULL:
        raise MemoryError()
    try:
        for x in range(p):
            chi[x] = -1
        sq = 0
        step = 1
        for x in range((p + 1) // 2):
            chi[sq] = 1
            sq += step
            if sq >= p:
                sq -= p
            step += 2
            if step >= p:
                step -= p
        chi[0] = 0
        b2 = _mod(b2, p)
        b4 = _mod(b4, p)
        f = _mod(b6, p)
        d1 = _mod(4 + b2 + 2 * b4, p)
        d2 = _mod(24 + 2 * b2, p)
        d3 = 24 % p
        for x in range(p):
            s += chi[f]
            f += d1
            if f >= p:
                f -= p
            d1 += d2
            if d1 >= p:
                d1 -= p
            d2 += d3
            if d2 >= p:
                d2 -= p
    finally:
        free(chi)
    return p + 1 + s


def count_exhaustive(int64_t p, int64_t b2, int64_t b4, int64_t b6):
    """#E(F_p) for odd p from y'^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 (coefficients mod p)."""
    if p >= P_LIMIT:
        raise ValueError("compiled exhaustive count needs p < 2**31")
    return _count_exhaustive(p, b2, b4, b6)


def ap_good_batch(const int64_t[:] primes, const int64_t[:] b2, const int64_t[:] b4,
                  const int64_t[:] b6, const int64_t[:] a, const int64_t[:] b,
                  int64_t threshold):
    """a_p for good odd primes; arrays hold coefficients already reduced mod each prime."""
    cdef Py_ssize_t k, n = primes.shape[0]
    cdef int64_t p, cnt
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[:] view = out
    for k in range(n):
        p = primes[k]
        if p < threshold or p <= 229:
            cnt = _count_exhaustive(p, b2[k], b4[k], b6[k])
        else:
            cnt = count_bsgs(p, a[k], b[k])
        view[k] = p + 1 - cnt
    return out
