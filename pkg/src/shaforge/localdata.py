"""Tate's algorithm at each bad prime, and the global conductor / Tamagawa product."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ec_core import (
    IDENTITY,
    Transform,
    WeierstrassCurve,
    apply_transform,
    b_invariants,
    compose,
    invariants,
    minimal_model,
)
from .intarith import DEFAULT_EFFORT, factor, legendre, valuation


@dataclass(frozen=True)
class LocalData:
    p: int
    kodaira: str
    f_p: int
    c_p: int
    reduction: str  # good, split-mult, nonsplit-mult, additive
    ord_disc: int


@dataclass(frozen=True)
class TateResult:
    local: LocalData
    model: WeierstrassCurve  # minimal at p
    transform: Transform  # input model -> ``model``


@dataclass(frozen=True)
class GlobalArithData:
    conductor: int
    c_fin: int
    locals: tuple[LocalData, ...]
    disc_min: int
    model: WeierstrassCurve = field(compare=False)

    def local(self, p: int) -> LocalData | None:
        for ld in self.locals:
            if ld.p == p:
                return ld
        return None


# ---- small polynomial helpers over F_p --------------------------------------


def _quadratic_has_root(a: int, b: int, c: int, p: int) -> bool:
    """Whether a X^2 + b X + c has a root in F_p."""
    a, b, c = a % p, b % p, c % p
    if p <= 3:
        return any((a * x * x + b * x + c) % p == 0 for x in range(p))
    if a == 0:
        return b != 0 or c == 0
    return legendre(b * b - 4 * a * c, p) >= 0


def _polymod(f: list[int], g: list[int], p: int) -> list[int]:
    # coefficient lists, highest degree first; g monic
    f = [x % p for x in f]
    while len(f) >= len(g):
        lead = f[0]
        if lead:
            for i in range(len(g)):
                f[i] = (f[i] - lead * g[i]) % p
        f.pop(0)
    while f and f[0] == 0:
        f.pop(0)
    return f


def _polymulmod(f: list[int], g: list[int], m: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = (out[i + j] + x * y) % p
    return _polymod(out, m, p)


def _polygcd_degree(f: list[int], g: list[int], p: int) -> int:
    while g:
        inv = pow(g[0], -1, p)
        g = [x * inv % p for x in g]
        f, g = g, _polymod(f, g, p)
    return len(f) - 1


def _cubic_root_count(b: int, c: int, d: int, p: int) -> int:
    """Distinct roots of T^3 + b T^2 + c T + d in F_p."""
    if p < 1000:
        return sum(1 for x in range(p) if (((x + b) * x + c) * x + d) % p == 0)
    f = [1, b % p, c % p, d % p]
    # T^p mod f by square-and-multiply
    result, base, e = [1], [1, 0], p
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    h = [0] * (3 - len(result)) + result
    h[-2] = (h[-2] - 1) % p  # T^p - T
    while h and h[0] == 0:
        h.pop(0)
    if not h:
        return 3
    return _polygcd_degree(f, h, p)


# ---- Tate's algorithm -------------------------------------------------------


def tate(c: WeierstrassCurve, p: int) -> TateResult:
    """Kodaira symbol, conductor exponent and Tamagawa number at p.

    Works at every prime including 2 and 3. When the input is not minimal at p
    the model is rescaled and the returned transform records how.
    """
    cur, total = c, IDENTITY
    half = (p + 1) // 2

    def move(u, r, s, t):
        nonlocal cur, total
        cur = apply_transform(cur, u, r, s, t)
        total = compose(total, (u, r, s, t))

    def done(kodaira, f, cp, reduction, vD):
        return TateResult(LocalData(p, kodaira, f, cp, reduction, vD), cur, total)

    while True:
        inv = invariants(cur)
        vD = valuation(inv.disc, p)
        if vD == 0:
            return done("I0", 0, 1, "good", 0)
        a1, a2, a3, a4, a6 = cur.ainvs
        b2, b4, b6, b8 = b_invariants(cur)

        # move the singular point of the reduction to (0, 0)
        if p == 2:
            if b2 % 2 == 0:
                r = a4 % 2
                t = (((r + a2) * r + a4) * r + a6) % 2
            else:
                r = a3 % 2
                t = (a4 + r * r) % 2
        elif p == 3:
            r = (-b6) % 3 if b2 % 3 == 0 else (-b4 * b2) % 3
            t = (a1 * r + a3) % 3
        else:
            if inv.c4 % p == 0:
                r = -b2 * pow(12, -1, p) % p
            else:
                r = -(inv.c6 + b2 * inv.c4) * pow(12 * inv.c4, -1, p) % p
            t = -(a1 * r + a3) * half % p
        move(1, r, 0, t)
        a1, a2, a3, a4, a6 = cur.ainvs
        b2, b4, b6, b8 = b_invariants(cur)
        assert a3 % p == 0 and a4 % p == 0 and a6 % p == 0

        if b2 % p != 0:
            # multiplicative: split iff T^2 + a1 T - a2 splits mod p
            split = _quadratic_has_root(1, a1, -a2, p)
            if split:
                return done(f"I{vD}", 1, vD, "split-mult", vD)
            return done(f"I{vD}", 1, 2 if vD % 2 == 0 else 1, "nonsplit-mult", vD)

        if valuation(a6, p) < 2:
            return done("II", vD, 1, "additive", vD)
        if valuation(b8, p) < 3:
            return done("III", vD - 1, 2, "additive", vD)
        if valuation(b6, p) < 3:
            cp = 3 if _quadratic_has_root(1, a3 // p, -(a6 // p**2), p) else 1
            return done("IV", vD - 2, cp, "additive", vD)

        # arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
        if p == 2:
            s = a2 % 2
            t = 2 * ((a6 // 4) % 2)
        elif p == 3:
            s, t = a1, a3
        else:
            s, t = -a1 * half, -a3 * half
        move(1, 0, s, t)
        a1, a2, a3, a4, a6 = cur.ainvs

        b, cc, d = a2 // p, a4 // p**2, a6 // p**3
        w = 27 * d * d - b * b * cc * cc + 4 * b**3 * d - 18 * b * cc * d + 4 * cc**3
        x = 3 * cc - b * b
        if w % p != 0:
            roots = _cubic_root_count(b, cc, d, p)
            return done("I0*", vD - 4, 1 + roots, "additive", vD)

        if x % p != 0:
            # double root: I_n^*
            if p == 2:
                r = cc
            elif p == 3:
                r = b * cc
            else:
                r = (b * cc - 9 * d) * pow(2 * x, -1, p)
            move(1, p * (r % p), 0, 0)
            a1, a2, a3, a4, a6 = cur.ainvs
            ix = iy = 3
            mx = my = p * p
            while True:
                a2t, a3t = a2 // p, a3 // my
                a4t, a6t = a4 // (p * mx), a6 // (mx * my)
                if (a3t * a3t + 4 * a6t) % p != 0:
                    cp = 4 if _quadratic_has_root(1, a3t, -a6t, p) else 2
                    break
                t = my * (a6t % 2) if p == 2 else my * (-a3t * half % p)
                move(1, 0, 0, t)
                a1, a2, a3, a4, a6 = cur.ainvs
                my *= p
                iy += 1
                a2t, a3t = a2 // p, a3 // my
                a4t, a6t = a4 // (p * mx), a6 // (mx * my)
                if (a4t * a4t - 4 * a6t * a2t) % p != 0:
                    cp = 4 if _quadratic_has_root(a2t, a4t, a6t, p) else 2
                    break
                if p == 2:
                    r = mx * ((a6t * a2t) % 2)
                else:
                    r = mx * (-a4t * pow(2 * a2t, -1, p) % p)
                move(1, r, 0, 0)
                a1, a2, a3, a4, a6 = cur.ainvs
                mx *= p
                ix += 1
            n = ix + iy - 5
            return done(f"I{n}*", vD - 4 - n, cp, "additive", vD)

        # triple root
        if p == 2:
            r = b
        elif p == 3:
            r = -d
        else:
            r = -b * pow(3, -1, p)
        move(1, p * (r % p), 0, 0)
        a1, a2, a3, a4, a6 = cur.ainvs
        a3t, a6t = a3 // p**2, a6 // p**4
        if (a3t * a3t + 4 * a6t) % p != 0:
            cp = 3 if _quadratic_has_root(1, a3t, -a6t, p) else 1
            return done("IV*", vD - 6, cp, "additive", vD)
        t = -(p**2) * (a6t % 2) if p == 2 else p**2 * (-a3t * half % p)
        move(1, 0, 0, t)
        a1, a2, a3, a4, a6 = cur.ainvs
        if valuation(a4, p) < 4:
            return done("III*", vD - 7, 2, "additive", vD)
        if valuation(a6, p) < 6:
            return done("II*", vD - 8, 1, "additive", vD)
        move(p, 0, 0, 0)


def tate_local(c: WeierstrassCurve, p: int) -> LocalData:
    return tate(c, p).local


def global_data(c: WeierstrassCurve, effort_bound: int = DEFAULT_EFFORT) -> GlobalArithData:
    """Minimalize, factor the minimal discriminant and run Tate at every bad prime."""
    model, _ = minimal_model(c)
    disc = invariants(model).disc
    locs = []
    conductor = c_fin = 1
    for p, _e in factor(disc, effort_bound).factors:
        ld = tate(model, p).local
        locs.append(ld)
        conductor *= p**ld.f_p
        c_fin *= ld.c_p
    return GlobalArithData(conductor, c_fin, tuple(locs), disc, model)
