"""Weierstrass models over Q: invariants, coordinate changes, group law, point counts."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BadReduction, SingularCurve


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 with integer coefficients."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.ainvs) + "]"

    @classmethod
    def parse(cls, text: str) -> "WeierstrassCurve":
        """Parse ``[a1,a2,a3,a4,a6]``; the short form ``[a4,a6]`` is also accepted."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"curve must look like [a1,a2,a3,a4,a6], got {text!r}")
        parts = [s.strip() for s in body[1:-1].split(",")]
        if not all(re.fullmatch(r"[+-]?\d+", s) for s in parts):
            raise ValueError(f"non-integer coefficient in {text!r}")
        vals = [int(s) for s in parts]
        if len(vals) == 2:
            vals = [0, 0, 0] + vals
        if len(vals) != 5:
            raise ValueError(f"expected 5 coefficients, got {len(vals)}")
        return cls(*vals)


@dataclass(frozen=True)
class CurveInvariants:
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    disc: int
    j_num: int
    j_den: int

    @property
    def j(self) -> Fraction:
        return Fraction(self.j_num, self.j_den)


def b_invariants(c: WeierstrassCurve) -> tuple[int, int, int, int]:
    a1, a2, a3, a4, a6 = c.ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def discriminant(c: WeierstrassCurve) -> int:
    b2, b4, b6, b8 = b_invariants(c)
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def invariants(c: WeierstrassCurve) -> CurveInvariants:
    b2, b4, b6, b8 = b_invariants(c)
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    num = c4**3 - c6 * c6
    if num == 0:
        raise SingularCurve(f"curve {c} has zero discriminant")
    disc, rem = divmod(num, 1728)
    assert rem == 0
    jn, jd = c4**3, disc
    g = math.gcd(jn, jd)
    jn, jd = jn // g, jd // g
    if jd < 0:
        jn, jd = -jn, -jd
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, jn, jd)


# Coordinate changes x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.

Transform = tuple[int, int, int, int]
IDENTITY: Transform = (1, 0, 0, 0)


def apply_transform(c: WeierstrassCurve, u, r, s, t) -> WeierstrassCurve:
    """Apply [u;r,s,t]; u must divide the transformed coefficients exactly."""
    a1, a2, a3, a4, a6 = c.ainvs
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1
    out = []
    for k, v in zip((1, 2, 3, 4, 6), (n1, n2, n3, n4, n6)):
        q, rem = divmod(v, u**k)
        if rem:
            raise ValueError(f"transform {u,r,s,t} does not give an integral model")
        out.append(q)
    return WeierstrassCurve(*out)


def compose(first: Transform, second: Transform) -> Transform:
    u1, r1, s1, t1 = first
    u2, r2, s2, t2 = second
    return (
        u1 * u2,
        r1 + u1 * u1 * r2,
        s1 + u1 * s2,
        t1 + u1 * u1 * s1 * r2 + u1**3 * t2,
    )


def reduce_model(c: WeierstrassCurve) -> tuple[WeierstrassCurve, Transform]:
    """Normalize to a1, a3 in {0,1} and a2 in {-1,0,1} by an integral change with u=1."""
    a1, a2, a3, a4, a6 = c.ainvs
    s = -(a1 // 2)
    r = -((a2 - s * a1 - s * s + 1) // 3)
    a1p = a1 + 2 * s
    t = -((a3 + r * a1p) // 2)
    step = compose(compose((1, 0, s, 0), (1, r, 0, 0)), (1, 0, 0, t))
    return apply_transform(c, *step), step


def minimal_model(c: WeierstrassCurve) -> tuple[WeierstrassCurve, Transform]:
    """Global minimal model and the change of coordinates leading to it."""
    from .intarith import factor
    from .localdata import tate

    inv = invariants(c)
    cur, total = c, IDENTITY
    # only primes with p^12 | disc can be non-minimal; p^4 | c4 and p^6 | c6 are necessary too
    g = math.gcd(inv.disc, inv.c6)
    candidates = [p for p, e in factor(g).factors if e >= 6] if abs(g) > 1 else []
    for p in candidates:
        if inv.c4 != 0 and inv.c4 % p**4 != 0:
            continue
        res = tate(cur, p)
        if res.transform != IDENTITY:
            cur = res.model
            total = compose(total, res.transform)
    red, tr = reduce_model(cur)
    return red, compose(total, tr)


def is_minimal(c: WeierstrassCurve) -> bool:
    m, _ = minimal_model(c)
    return abs(invariants(m).disc) == abs(invariants(c).disc)


# ---- rational points ------------------------------------------------------


@dataclass(frozen=True)
class PointQ:
    """Affine rational point; ``None`` stands for the point at infinity."""

    x: Fraction
    y: Fraction

    def __iter__(self):
        return iter((self.x, self.y))


INFINITY: Optional[PointQ] = None


def point(x, y) -> PointQ:
    return PointQ(Fraction(x), Fraction(y))


def on_curve(c: WeierstrassCurve, P: Optional[PointQ]) -> bool:
    if P is None:
        return True
    a1, a2, a3, a4, a6 = c.ainvs
    x, y = P.x, P.y
    return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6


def negate(c: WeierstrassCurve, P: Optional[PointQ]) -> Optional[PointQ]:
    if P is None:
        return None
    return PointQ(P.x, -P.y - c.a1 * P.x - c.a3)


def point_add(c: WeierstrassCurve, P: Optional[PointQ], Q: Optional[PointQ]) -> Optional[PointQ]:
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = c.ainvs
    if P.x == Q.x:
        if P.y + Q.y + a1 * Q.x + a3 == 0:
            return None
        lam = (3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y) / (2 * P.y + a1 * P.x + a3)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    nu = P.y - lam * P.x
    x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
    y3 = -(lam + a1) * x3 - nu - a3
    return PointQ(x3, y3)


def point_mul(c: WeierstrassCurve, n: int, P: Optional[PointQ]) -> Optional[PointQ]:
    if n < 0:
        return point_mul(c, -n, negate(c, P))
    out = None
    while n:
        if n & 1:
            out = point_add(c, out, P)
        P = point_add(c, P, P)
        n >>= 1
    return out


# ---- counting points over F_p ---------------------------------------------

EXHAUSTIVE_LIMIT = 1 << 16


def _count_p2(c: WeierstrassCurve) -> int:
    a1, a2, a3, a4, a6 = (a % 2 for a in c.ainvs)
    n = 1
    for x in range(2):
        for y in range(2):
            if (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % 2 == 0:
                n += 1
    return n


def count_points_mod_p(c: WeierstrassCurve, p: int, threshold: int = EXHAUSTIVE_LIMIT) -> int:
    """#E(F_p) including infinity; p must be a prime of good reduction for this model."""
    from . import kernels

    inv = invariants(c)
    if inv.disc % p == 0:
        raise BadReduction(f"p={p} divides the discriminant of {c}")
    if p == 2:
        return _count_p2(c)
    if p < threshold or p <= 229:
        return kernels.count_exhaustive(p, inv.b2 % p, inv.b4 % p, inv.b6 % p)
    return kernels.count_bsgs(p, (-27 * inv.c4) % p, (-54 * inv.c6) % p)
