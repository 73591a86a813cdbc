"""Torsion order, the analytic order of Sha, square recognition and the GS ratio."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .ec_core import WeierstrassCurve, count_points_mod_p, invariants
from .errors import ApparentPositiveRank, ClassInconsistent, NotASquare
from .intarith import isqrt, primes_up_to
from .localdata import GlobalArithData
from .lseries import LTruncation, PeriodData

TORSION_PRIMES = 30
TORSION_PRIME_LIMIT = 500
RANK_GUARD = 10

# ---- integer polynomials, highest degree first ------------------------------


def _peval(f, x):
    v = 0
    for a in f:
        v = v * x + a
    return v


def _pmul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _padd(f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    off = len(f) - len(g)
    for i, b in enumerate(g):
        out[off + i] += b
    return _strip(out)


def _pneg(f):
    return [-a for a in f]


def _strip(f):
    i = 0
    while i < len(f) - 1 and f[i] == 0:
        i += 1
    return f[i:]


def _pdiv_exact(f, d: int):
    assert all(a % d == 0 for a in f)
    return [a // d for a in f]


def _pmod(f, p):
    return _strip([a % p for a in f])


def _pderiv(f):
    n = len(f) - 1
    return _strip([a * (n - i) for i, a in enumerate(f[:-1])]) or [0]


def _roots_mod(f, p):
    return [x for x in range(p) if _peval(f, x) % p == 0]


def _squarefree_mod(f, p) -> bool:
    """Whether f mod p keeps its degree and has no repeated factor."""
    if f[0] % p == 0:
        return False
    a, b = _pmod(f, p), _pmod(_pderiv(f), p)
    while b != [0] and b:
        inv = pow(b[0], -1, p)
        b = [x * inv % p for x in b]
        # a mod b
        a = list(a)
        while len(a) >= len(b) and a != [0]:
            lead = a[0]
            for i in range(len(b)):
                a[i] = (a[i] - lead * b[i]) % p
            a.pop(0)
            a = _strip(a) if a else [0]
        a, b = b, a
    return len(a) == 1


def integer_roots(f: list[int]) -> list[int]:
    """All integer roots of a squarefree integer polynomial (Hensel lifting mod a small prime)."""
    f = _strip(list(f))
    if len(f) == 1:
        return []
    roots = set()
    while f[-1] == 0 and len(f) > 1:  # factor out x
        roots.add(0)
        f = f[:-1]
    if len(f) == 1:
        return sorted(roots)
    bound = 1 + max(abs(a) for a in f[1:]) // abs(f[0]) + 1
    df = _pderiv(f)
    for p in primes_up_to(2000).tolist():
        if p > 2 and _squarefree_mod(f, p):
            break
    else:
        raise ValueError("no prime keeps the polynomial squarefree")
    target = 2 * bound + 1
    for r in _roots_mod(f, p):
        mod = p
        while mod < target:
            mod = mod * mod
            r = (r - _peval(f, r) * pow(_peval(df, r), -1, mod)) % mod
        cand = r if r <= mod // 2 else r - mod
        if _peval(f, cand) == 0:
            roots.add(cand)
    return sorted(roots)


# ---- torsion ----------------------------------------------------------------


def torsion_bound(c: WeierstrassCurve, g: GlobalArithData | None = None) -> int:
    """gcd of #E(F_p) over the first 30 good odd primes below 500."""
    disc = invariants(c).disc
    out = 0
    used = 0
    for p in primes_up_to(TORSION_PRIME_LIMIT).tolist():
        if p == 2 or disc % p == 0:
            continue
        out = math.gcd(out, count_points_mod_p(c, p))
        used += 1
        if used == TORSION_PRIMES:
            break
    return out


def _short_model(c: WeierstrassCurve) -> tuple[int, int]:
    """(A, B) with Y^2 = X^3 + A X + B integral and isomorphic to c."""
    inv = invariants(c)
    return -27 * inv.c4, -54 * inv.c6


def _short_add(P, Q, A):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2:
        if y1 + y2 == 0:
            return None
        lam = _frac(3 * x1 * x1 + A, 2 * y1)
    else:
        lam = _frac(y2 - y1, x2 - x1)
    x3 = lam * lam - x1 - x2
    return x3, lam * (x1 - x3) - y1


def _frac(a, b):
    return Fraction(a) / Fraction(b)


def _halves(Q, A, B):
    """Integral points P with 2P = Q on Y^2 = X^3 + A X + B."""
    xq = Q[0]
    # x(2P) = (x^4 - 2A x^2 - 8B x + A^2) / (4(x^3 + A x + B))
    quartic = [1, -4 * xq, -2 * A, -8 * B - 4 * A * xq, A * A - 4 * B * xq]
    out = []
    for x in _integer_roots_any(quartic):
        y, exact = isqrt(x**3 + A * x + B) if x**3 + A * x + B >= 0 else (0, False)
        if not exact:
            continue
        for yy in {y, -y}:
            D = _short_add((x, yy), (x, yy), A)
            if D is not None and D[0] == Q[0] and D[1] == Q[1]:
                out.append((x, yy))
    return out


def _integer_roots_any(f):
    """Integer roots of f even when f has repeated factors."""
    f = _strip(list(f))
    # squarefree part via gcd(f, f') over Q
    a = [Fraction(v) for v in f]
    b = [Fraction(v) for v in _pderiv(f)]
    while len(b) > 1 or (b and b[0] != 0):
        if len(b) == 1:
            a = [Fraction(1)]
            break
        r = list(a)
        while len(r) >= len(b):
            lead = r[0] / b[0]
            for i in range(len(b)):
                r[i] -= lead * b[i]
            r.pop(0)
        while r and r[0] == 0:
            r.pop(0)
        a, b = b, r
        if not b:
            break
    if len(a) > 1:
        # divide f by the gcd a
        q, r = [], [Fraction(v) for v in f]
        while len(r) >= len(a):
            lead = r[0] / a[0]
            q.append(lead)
            for i in range(len(a)):
                r[i] -= lead * a[i]
            r.pop(0)
        den = math.lcm(*(v.denominator for v in q))
        f = [int(v * den) for v in q]
    return integer_roots(f)


def division_polynomial(n: int, A: int, B: int) -> list[int]:
    """psi_n for odd n, or psi_n / y for even n, on Y^2 = X^3 + A X + B."""
    F2 = _pmul([1, 0, A, B], [1, 0, A, B])
    h = {
        0: [0],
        1: [1],
        2: [2],
        3: [3, 0, 6 * A, 12 * B, -A * A],
        4: [4 * v for v in [1, 0, 5 * A, 20 * B, -5 * A * A, -4 * A * B, -8 * B * B - A**3]],
    }
    for j in range(5, n + 1):
        mm = j // 2
        if j % 2:
            t1 = _pmul(h[mm + 2], _pmul(h[mm], _pmul(h[mm], h[mm])))
            t2 = _pmul(h[mm - 1], _pmul(h[mm + 1], _pmul(h[mm + 1], h[mm + 1])))
            if mm % 2 == 0:
                t1 = _pmul(t1, F2)
            else:
                t2 = _pmul(t2, F2)
            h[j] = _padd(t1, _pneg(t2))
        else:
            inner = _padd(
                _pmul(h[mm + 2], _pmul(h[mm - 1], h[mm - 1])),
                _pneg(_pmul(h[mm - 2], _pmul(h[mm + 1], h[mm + 1]))),
            )
            h[j] = _pdiv_exact(_pmul(h[mm], inner), 2)
    return h[n]


def _odd_points(ell_power: int, A: int, B: int) -> int:
    """Number of rational points killed by the odd integer ell_power."""
    count = 1
    for x in integer_roots(division_polynomial(ell_power, A, B)):
        v = x**3 + A * x + B
        if v > 0 and isqrt(v)[1]:
            count += 2
    return count


def torsion_order(c: WeierstrassCurve, g: GlobalArithData | None = None) -> int:
    """Exact order of E(Q)_tors: a reduction bound met by exhibited integral points."""
    bound = torsion_bound(c, g)
    A, B = _short_model(c)
    two_part = bound & -bound
    pts = {None}
    if two_part > 1:
        frontier = [(x, 0) for x in integer_roots([1, 0, A, B])]
        pts.update(frontier)
        while frontier and len(pts) < two_part:
            nxt = []
            for Q in frontier:
                for P in _halves(Q, A, B):
                    if P not in pts:
                        pts.add(P)
                        nxt.append(P)
            frontier = nxt
    order = len(pts)
    odd = bound // two_part
    for ell, cap in ((3, 2), (5, 1), (7, 1)):
        e = 0
        while odd % ell == 0:
            odd //= ell
            e += 1
        if e:
            order *= _odd_points(ell ** min(e, cap), A, B)
    return order


# ---- the BSD quotient -------------------------------------------------------


@dataclass
class ShaReport:
    l_value: float
    sha_real: float
    sha_int: int
    sha_sqrt: int
    residual: float
    gs_ratio: float
    torsion: int
    status: str
    square_tol: float = 0.0
    k: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def condition_factor(torsion: int, period: PeriodData, c_fin: int) -> mpmath.mpf:
    return torsion * torsion / (period.c_infty * c_fin)


def analytic_sha(
    c: WeierstrassCurve,
    g: GlobalArithData,
    period: PeriodData,
    l: LTruncation,
    torsion: int | None = None,
    strict: bool = False,
) -> ShaReport:
    """L(E,1) |tors|^2 / (C_inf C_fin), recognized as an integer square."""
    if torsion is None:
        torsion = torsion_order(c, g)
    cond = condition_factor(torsion, period, g.c_fin)
    tol = float(mpmath.mpf(10) ** (-(l.k - 1)) * cond)
    L = l.s_m
    if abs(L) < RANK_GUARD * mpmath.mpf(10) ** (-l.k):
        if strict:
            raise ApparentPositiveRank(f"|S_m| = {mpmath.nstr(abs(L), 3)} below the rank guard")
        return ShaReport(float(L), float("nan"), 0, 0, float("nan"), float("nan"), torsion,
                         "apparent-positive-rank", tol, l.k)
    sha = L * cond
    sha_int = int(mpmath.nint(sha))
    residual = float(abs(sha - sha_int))
    root, exact = isqrt(sha_int) if sha_int >= 0 else (0, False)
    status = "ok" if residual < tol and exact and sha_int > 0 else "not-a-square"
    if status != "ok" and strict:
        raise NotASquare(f"analytic Sha {mpmath.nstr(sha, 12)} is not within {tol:.3g} of a square")
    gs = goldfeld_szpiro(sha_int, g.conductor) if status == "ok" else float("nan")
    return ShaReport(float(L), float(sha), sha_int, root if exact else 0, residual, gs, torsion,
                     status, tol, l.k)


def goldfeld_szpiro(sha_int: int, N: int) -> float:
    """|Sha| / sqrt(N), correct to well beyond 10 significant digits."""
    with mpmath.workdps(40):
        return float(mpmath.mpf(sha_int) / mpmath.sqrt(N))


def format_gs(sha_int: int, N: int, digits: int = 10) -> str:
    """|Sha|/sqrt(N) truncated (not rounded) to ``digits`` decimals, in exact arithmetic."""
    scaled = isqrt(sha_int * sha_int * 10 ** (2 * digits) // N)[0]
    whole, frac = divmod(scaled, 10**digits)
    return f"{whole}.{frac:0{digits}d}"


@dataclass
class ClassSummary:
    n: int
    p: int
    conductor: int
    sha: tuple[int, ...]
    ratios: tuple[int, ...]

    def row(self) -> str:
        roots = ", ".join(str(isqrt(s)[0]) for s in self.sha)
        return f"({self.n},{self.p})  N={self.conductor}  sqrt|Sha| = ({roots})"


def _is_power_of_4(v: int) -> bool:
    return v > 0 and v & (v - 1) == 0 and (v.bit_length() - 1) % 2 == 0


def isogeny_class_report(reports, n: int = 0, p: int = 0, conductor: int = 0) -> ClassSummary:
    """Check that Sha orders across E_1..E_4 differ by powers of 4."""
    shas = [r.sha_int if hasattr(r, "sha_int") else int(r) for r in reports]
    if any(s <= 0 for s in shas):
        raise ClassInconsistent("class report needs four positive Sha orders")
    low = min(shas)
    ratios = []
    for s in shas:
        if s % low or not _is_power_of_4(s // low):
            raise ClassInconsistent(f"Sha orders {shas} do not differ by powers of 4")
        ratios.append(s // low)
    return ClassSummary(n, p, conductor, tuple(shas), tuple(ratios))

