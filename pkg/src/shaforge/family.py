"""The four 2-isogenous curves E_1..E_4(n, p) built on y^2 = x(x+p)(x+p-4*3^(2n+1))."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ap_engine import ap_table
from .ec_core import WeierstrassCurve
from .errors import ClassInconsistent, DegenerateParameters
from .intarith import DEFAULT_EFFORT, primes_up_to
from .localdata import global_data


@dataclass(frozen=True, order=True)
class FamilyId:
    i: int
    n: int
    p: int

    def __post_init__(self):
        if self.i not in (1, 2, 3, 4):
            raise ValueError(f"family index must be 1..4, got {self.i}")
        if self.n < 0:
            raise ValueError(f"n must be nonnegative, got {self.n}")
        if self.p == 0 or self.p == 4 * 3 ** (2 * self.n + 1):
            raise DegenerateParameters(f"(n, p) = ({self.n}, {self.p}) gives a singular curve")

    def __str__(self) -> str:
        return f"E{self.i}({self.n},{self.p})"

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        i, n, p = (int(s) for s in text.split(","))
        return cls(i, n, p)


def family_curve(fid: FamilyId) -> WeierstrassCurve:
    """The literal integral model of E_i(n, p), before minimalization."""
    n, p = fid.n, fid.p
    q = 3 ** (2 * n + 1)
    if fid.i == 1:
        # x(x+p)(x+p-4q) = x^3 + (2p-4q) x^2 + p(p-4q) x
        return WeierstrassCurve(0, 2 * p - 4 * q, 0, p * (p - 4 * q), 0)
    if fid.i == 2:
        return WeierstrassCurve(0, 4 * (2 * q - p), 0, 16 * 3 ** (4 * n + 2), 0)
    if fid.i == 3:
        return WeierstrassCurve(0, 2 * (4 * q + p), 0, (4 * q - p) ** 2, 0)
    return WeierstrassCurve(0, 2 * (p - 8 * q), 0, p * p, 0)


def class_curves(n: int, p: int) -> list[WeierstrassCurve]:
    return [family_curve(FamilyId(i, n, p)) for i in (1, 2, 3, 4)]


def grid(n_range: tuple[int, int], p_range: tuple[int, int]) -> list[tuple[int, int]]:
    """Valid (n, p) pairs: ascending n, then ascending |p| with negative p first."""
    out = []
    for n in range(n_range[0], n_range[1] + 1):
        ps = [p for p in range(p_range[0], p_range[1] + 1) if p != 0 and p != 4 * 3 ** (2 * n + 1)]
        ps.sort(key=lambda v: (abs(v), v))
        out.extend((n, p) for p in ps)
    return out


@dataclass
class IsogenyClass:
    n: int
    p: int
    curves: list  # literal models E_1..E_4
    gdata: list  # GlobalArithData per member, minimal models inside
    conductor: int


CHECK_PRIMES = 100


def isogeny_class(n: int, p: int, effort_bound: int = DEFAULT_EFFORT, check_primes: int = CHECK_PRIMES) -> IsogenyClass:
    """All four members, minimalized, with conductor and a_q agreement checked."""
    curves = class_curves(n, p)
    gdata = [global_data(c, effort_bound) for c in curves]
    conductors = {g.conductor for g in gdata}
    if len(conductors) != 1:
        raise ClassInconsistent(f"({n},{p}): conductors differ across the class: {sorted(conductors)}")
    bad = set()
    for g in gdata:
        bad.update(ld.p for ld in g.locals)
    good = []
    for q in primes_up_to(20 * check_primes + 1000).tolist():
        if q not in bad:
            good.append(q)
            if len(good) == check_primes:
                break
    good = np.asarray(good, dtype=np.int64)
    ref = ap_table(gdata[0].model, gdata[0], good)
    for i, g in enumerate(gdata[1:], start=2):
        if not np.array_equal(ap_table(g.model, g, good), ref):
            raise ClassInconsistent(f"({n},{p}): a_q of E_{i} differs from E_1")
    return IsogenyClass(n, p, curves, gdata, conductors.pop())
