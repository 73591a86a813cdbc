"""End-to-end analysis of one curve or one isogeny class."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import mpmath

from .ap_engine import APTable, load_table, write_ap_cache
from .bsd import ShaReport, analytic_sha, condition_factor, isogeny_class_report, torsion_order
from .ec_core import WeierstrassCurve
from .errors import BudgetExceeded, FactorTooHard
from .family import isogeny_class
from .intarith import DEFAULT_EFFORT
from .localdata import GlobalArithData, global_data
from .lseries import (
    LTruncation,
    PeriodData,
    approximate_L1,
    coefficients_needed,
    max_terms_default,
    real_period,
    terms_needed,
)

PERIOD_DIGITS = 30
# rough desk costs used only for dry-run estimates
SECONDS_PER_TERM = 1.5e-6
SECONDS_PER_PRIME = 7e-5


@dataclass
class CurveAnalysis:
    curve: WeierstrassCurve
    gdata: GlobalArithData | None = None
    period: PeriodData | None = None
    torsion: int | None = None
    truncation: LTruncation | None = None
    report: ShaReport | None = None
    status: str = "ok"
    message: str = ""
    k_requested: int = 3
    k_used: int = 3
    seconds: float = 0.0

    @property
    def model(self) -> WeierstrassCurve | None:
        return None if self.gdata is None else self.gdata.model


def effective_k(k: int, cond) -> int:
    """Raise k until the L-value error, scaled into Sha, is below 10^-3.

    The quotient multiplies the L-value error by torsion^2/(C_inf C_fin); with
    this k the nearest integer is never ambiguous and the rank guard cannot
    swallow a genuine rank-zero value.
    """
    extra = math.ceil(float(mpmath.log10(cond))) + 3 if cond > 0 else 0
    return max(k, extra)


def estimate_seconds(m: int) -> float:
    return m * SECONDS_PER_TERM + m / max(math.log(m), 1.0) * SECONDS_PER_PRIME


def prepare(curve: WeierstrassCurve, effort_bound: int = DEFAULT_EFFORT, gdata: GlobalArithData | None = None):
    """Global data, period and torsion: everything except the L-value."""
    g = gdata if gdata is not None else global_data(curve, effort_bound)
    period = real_period(g.model, PERIOD_DIGITS)
    tors = torsion_order(g.model, g)
    return g, period, tors


def dry_run(curve: WeierstrassCurve, k: int = 3, effort_bound: int = DEFAULT_EFFORT, max_terms: int | None = None) -> dict:
    g, period, tors = prepare(curve, effort_bound)
    ku = effective_k(k, condition_factor(tors, period, g.c_fin))
    m = terms_needed(g.conductor, ku)
    if max_terms is None:
        max_terms = max_terms_default()
    return {
        "conductor": g.conductor,
        "k": k,
        "k_used": ku,
        "m": m,
        "estimated_seconds": estimate_seconds(m),
        "max_terms": max_terms,
        "within_budget": m <= max_terms,
    }


def analyze_curve(
    curve: WeierstrassCurve,
    k: int = 3,
    max_terms: int | None = None,
    workers: int = 1,
    effort_bound: int = DEFAULT_EFFORT,
) -> CurveAnalysis:
    """Minimal model, local data, period, torsion, L-value and the Sha report."""
    t0 = time.perf_counter()
    out = CurveAnalysis(curve, k_requested=k, k_used=k)
    try:
        g, period, tors = prepare(curve, effort_bound)
    except FactorTooHard as exc:
        out.status, out.message = exc.kind, str(exc)
        return out
    out.gdata, out.period, out.torsion = g, period, tors
    out.k_used = effective_k(k, condition_factor(tors, period, g.c_fin))
    try:
        out.truncation = approximate_L1(g.model, g, out.k_used, max_terms=max_terms, workers=workers)
    except BudgetExceeded as exc:
        out.status, out.message = exc.kind, str(exc)
        out.seconds = time.perf_counter() - t0
        return out
    out.report = analytic_sha(g.model, g, period, out.truncation, torsion=tors)
    out.status = out.report.status
    out.seconds = time.perf_counter() - t0
    return out


@dataclass
class ClassAnalysis:
    n: int
    p: int
    members: list[CurveAnalysis]
    conductor: int | None = None
    consistent: bool | None = None
    ratios: tuple = field(default_factory=tuple)


def analyze_class(
    n: int,
    p: int,
    k: int = 3,
    max_terms: int | None = None,
    workers: int = 1,
    effort_bound: int = DEFAULT_EFFORT,
    conductor_only: bool = False,
    table_hook=None,
) -> ClassAnalysis:
    """All four members of E_i(n, p); one L-value serves the whole class.

    Isogenous curves share their L-series, so S_m is summed once at the largest
    k any member needs and then fed to each member's quotient.
    """
    cls = isogeny_class(n, p, effort_bound)
    members = []
    for curve, g in zip(cls.curves, cls.gdata):
        gg, period, tors = prepare(curve, effort_bound, gdata=g)
        a = CurveAnalysis(curve, gg, period, tors, k_requested=k, k_used=k)
        a.k_used = effective_k(k, condition_factor(tors, period, gg.c_fin))
        members.append(a)
    out = ClassAnalysis(n, p, members, cls.conductor)
    if conductor_only:
        for a in members:
            a.status = "conductor-only"
        return out
    t0 = time.perf_counter()
    k_class = max(a.k_used for a in members)
    ref = members[0].gdata
    table = None
    try:
        if table_hook is not None and terms_needed(ref.conductor, k_class) <= (max_terms or max_terms_default()):
            table = table_hook(ref, coefficients_needed(ref.conductor, k_class), workers)
        trunc = approximate_L1(ref.model, ref, k_class, max_terms=max_terms, workers=workers, table=table)
    except BudgetExceeded as exc:
        for a in members:
            a.status, a.message = exc.kind, str(exc)
        return out
    for a in members:
        a.k_used = k_class
        a.truncation = trunc
        a.report = analytic_sha(a.gdata.model, a.gdata, a.period, trunc, torsion=a.torsion)
        a.status = a.report.status
    elapsed = time.perf_counter() - t0
    for a in members:
        a.seconds = elapsed / len(members)
    if all(a.status == "ok" for a in members):
        summary = isogeny_class_report([a.report for a in members], n, p, cls.conductor)
        out.consistent, out.ratios = True, summary.ratios
    return out


def table_from_cache(path_for):
    """A table hook that persists a_p per class so a restart never recounts."""
    def hook(g: GlobalArithData, m: int, workers: int) -> APTable:
        path = path_for(g)
        table = load_table(path, g.model, g, m)
        if table is None:
            table = APTable(g.model, g, m, workers=workers)
            write_ap_cache(path, g.model, m, table.values)
        return table

    return hook
