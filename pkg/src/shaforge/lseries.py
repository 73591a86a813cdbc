"""Real period, truncation length and the certified partial sum for L(E, 1)."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import mpmath
import numpy as np

from .ap_engine import APTable, DEFAULT_BLOCK, an_stream
from .ec_core import WeierstrassCurve, b_invariants, invariants
from .errors import BudgetExceeded
from .localdata import GlobalArithData

DEFAULT_MAX_TERMS = 10**8
SIGN_T = 1.2  # second point for the functional-equation sign test


def max_terms_default() -> int:
    return int(os.environ.get("SHAFORGE_MAX_TERMS", DEFAULT_MAX_TERMS))


@dataclass(frozen=True)
class PeriodData:
    omega: mpmath.mpf
    c_infty: mpmath.mpf
    connected: bool
    agm_steps: int = 0


@dataclass(frozen=True)
class LTruncation:
    m: int
    s_m: mpmath.mpf
    k: int
    work_digits: int
    conductor: int
    root_number: int = 1

    @property
    def error_bound(self) -> float:
        # truncation tail plus a rounding budget below 10^-(k+1)
        return 1.1 * 10.0 ** (-self.k)


def agm(a, b, digits: int) -> tuple[mpmath.mpf, int]:
    """Arithmetic-geometric mean and the number of iterations used."""
    eps = mpmath.mpf(10) ** (-digits - 3)
    steps = 0
    while abs(a - b) > eps * abs(a):
        a, b = (a + b) / 2, mpmath.sqrt(a * b)
        steps += 1
    return (a + b) / 2, steps


def _cubic_roots(b2: int, b4: int, b6: int) -> list:
    """Roots of 4x^3 + b2 x^2 + 2 b4 x + b6, polished at the current precision."""
    roots = mpmath.polyroots([4, b2, 2 * b4, b6], maxsteps=200, extraprec=2 * mpmath.mp.prec)
    f = lambda x: ((4 * x + b2) * x + 2 * b4) * x + b6
    df = lambda x: (12 * x + 2 * b2) * x + 2 * b4
    out = []
    for r in roots:
        for _ in range(8):
            d = df(r)
            if d == 0:
                break
            r = r - f(r) / d
        out.append(r)
    return out


def real_period(c: WeierstrassCurve, precision_digits: int = 30) -> PeriodData:
    """Least positive real period of the invariant differential on ``c``."""
    inv = invariants(c)
    b2, b4, b6, _ = b_invariants(c)
    scale = max(len(str(abs(v))) for v in (b2, b4, b6, 1))
    with mpmath.workdps(precision_digits + 2 * scale + 20):
        roots = _cubic_roots(b2, b4, b6)
        if inv.disc > 0:
            e3, e2, e1 = sorted(mpmath.re(r) for r in roots)
            g, steps = agm(mpmath.sqrt(e1 - e3), mpmath.sqrt(e1 - e2), precision_digits)
            omega = mpmath.pi / g
            connected = False
        else:
            e1 = min(roots, key=lambda r: abs(mpmath.im(r)))
            e1 = mpmath.re(e1)
            beta = mpmath.sqrt(3 * e1 * e1 + b2 * e1 / 2 + mpmath.mpf(b4) / 2)
            alpha = 3 * e1 + mpmath.mpf(b2) / 4
            g, steps = agm(2 * mpmath.sqrt(beta), mpmath.sqrt(2 * beta + alpha), precision_digits)
            omega = 2 * mpmath.pi / g
            connected = True
        omega = +omega
    with mpmath.workdps(precision_digits + 5):
        omega = +omega
        c_inf = omega if connected else 2 * omega
    return PeriodData(omega, c_inf, connected, steps)


def terms_needed(N: int, k: int) -> int:
    """Smallest m with m >= (sqrt(N)/2pi)(2 log 2 + k log 10 - log(1 - e^(-2pi/sqrt(N))))."""
    if N < 1 or k < 1:
        raise ValueError("need N >= 1 and k >= 1")
    dps = 30 + len(str(N))
    with mpmath.workdps(dps):
        rN = mpmath.sqrt(N)
        bound = rN / (2 * mpmath.pi) * (
            2 * mpmath.log(2) + k * mpmath.log(10) - mpmath.log(-mpmath.expm1(-2 * mpmath.pi / rN))
        )
        m = int(mpmath.ceil(bound))
    return max(m, 1)


def coefficients_needed(N: int, k: int) -> int:
    """Coefficients consumed by approximate_L1: the sign test also needs A(1/t)."""
    return max(terms_needed(N, k), terms_needed(math.ceil(N * SIGN_T * SIGN_T), k))


def work_digits_for(k: int, m: int) -> int:
    return k + math.ceil(math.log10(m + 1)) + 10


def approximate_L1(
    c: WeierstrassCurve,
    g: GlobalArithData,
    k: int,
    max_terms: int | None = None,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK,
    table: APTable | None = None,
) -> LTruncation:
    """S_m = 2 sum_{n<=m} a_n/n e^(-2 pi n/sqrt(N)), with m chosen for error 10^-k."""
    N = g.conductor
    m = terms_needed(N, k)
    if max_terms is None:
        max_terms = max_terms_default()
    if m > max_terms:
        raise BudgetExceeded(m, max_terms)
    m_sign = coefficients_needed(N, k)
    if table is not None and table.m < m_sign:
        table = None
    wd = work_digits_for(k, m)
    # Fixed-point accumulation is exact; only e^(-2 pi n / sqrt N) carries rounding.
    # Each power step loses < 1 ulp, so 2 log2(m) spare bits cover the whole walk.
    bits = math.ceil(wd * math.log2(10)) + 2 * m.bit_length() + 16
    with mpmath.workprec(bits + 64):
        q = mpmath.exp(-2 * mpmath.pi / mpmath.sqrt(N))
        Q = int(mpmath.floor(q * mpmath.mpf(2) ** bits))
    one = 1 << bits
    acc = 0
    e = one
    side = np.zeros(3)  # float sums of a_n/n e^(-2 pi n t/sqrt N) for t = 1, T, 1/T
    rates = -2 * math.pi / math.sqrt(N) * np.array([1.0, SIGN_T, 1 / SIGN_T])
    for blk in an_stream(c, g, m_sign, block_size=block_size, workers=workers, table=table):
        ns = np.arange(blk.start, blk.stop, dtype=np.float64)
        coef = blk.values / ns
        for j in range(3):
            side[j] += float(np.dot(coef, np.exp(rates[j] * ns)))
        if blk.start > m:
            continue
        n = blk.start
        for a in blk.values[: m + 1 - blk.start].tolist():
            e = (e * Q) >> bits
            if a:
                acc += (2 * a * e + n) // (2 * n)
            n += 1
    w = root_number_from_sums(*side)
    with mpmath.workdps(wd):
        s_m = 2 * mpmath.mpf(acc) / one if w == 1 else mpmath.mpf(0)
    return LTruncation(m, s_m, k, wd, N, w)


def root_number_from_sums(a1: float, at: float, ainv: float) -> int:
    """Sign of the functional equation from A(t) + w A(1/t) being independent of t."""
    plus = abs(at + ainv - 2 * a1)
    minus = abs(at - ainv)
    return 1 if plus <= minus else -1
