"""Command-line entry point: analyze, scan, ap, localdata."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .ap_engine import ap_table, write_ap_cache
from .bsd import format_gs
from .ec_core import WeierstrassCurve
from .errors import BudgetExceeded, ShaForgeError
from .family import FamilyId, family_curve
from .intarith import primes_up_to
from .localdata import global_data
from .lseries import max_terms_default
from .pipeline import analyze_curve, dry_run
from .scan import ScanConfig, fmt_real, render_csv, render_json, run_scan

EXIT_ERROR = 1
EXIT_STATUS = 3  # the pipeline ran but the curve did not give an ok Sha


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return a, b


def _curve_from(args) -> WeierstrassCurve:
    if args.curve:
        return WeierstrassCurve.parse(args.curve)
    return family_curve(FamilyId.parse(args.family))


def _add_curve_args(sp):
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--curve", help='Weierstrass coefficients, e.g. "[0,-1,1,-10,-20]"')
    g.add_argument("--family", help="family member as i,n,p, e.g. 2,23,-348")


def cmd_analyze(args) -> int:
    curve = _curve_from(args)
    if args.dry_run:
        info = dry_run(curve, args.k, max_terms=args.max_terms)
        if args.json:
            print(json.dumps(info, indent=1))
        else:
            print(f"conductor       {info['conductor']}")
            print(f"k requested     {info['k']}")
            print(f"k used          {info['k_used']}")
            print(f"terms needed    {info['m']}")
            print(f"estimated time  {info['estimated_seconds']:.3g} s")
            print(f"budget          {info['max_terms']}")
        if not info["within_budget"]:
            err = BudgetExceeded(info["m"], info["max_terms"])
            print(f"error: {err.kind}: {err}", file=sys.stderr)
            return EXIT_ERROR
        return 0
    res = analyze_curve(curve, k=args.k, max_terms=args.max_terms, workers=args.workers)
    rep = res.report
    info = {
        "curve": str(curve),
        "minimal_model": None if res.model is None else str(res.model),
        "conductor": None if res.gdata is None else res.gdata.conductor,
        "c_fin": None if res.gdata is None else res.gdata.c_fin,
        "torsion": res.torsion,
        "omega": None if res.period is None else fmt_real(res.period.omega),
        "c_infty": None if res.period is None else fmt_real(res.period.c_infty),
        "k": res.k_requested,
        "k_used": res.k_used,
        "m": None if res.truncation is None else res.truncation.m,
        "root_number": None if res.truncation is None else res.truncation.root_number,
        "l_value": None if rep is None else fmt_real(rep.l_value),
        "sha_real": None if rep is None else fmt_real(rep.sha_real),
        "sha_int": rep.sha_int if rep is not None and rep.ok else None,
        "sha_sqrt": rep.sha_sqrt if rep is not None and rep.ok else None,
        "residual": None if rep is None else fmt_real(rep.residual),
        "gs": format_gs(rep.sha_int, res.gdata.conductor) if rep is not None and rep.ok else None,
        "status": res.status,
    }
    if args.json:
        print(json.dumps(info, indent=1))
    else:
        width = max(len(k) for k in info)
        for key, v in info.items():
            print(f"{key:<{width}}  {'' if v is None else v}")
        if res.message:
            print(f"note: {res.message}")
    return 0 if res.status == "ok" else EXIT_STATUS


def cmd_scan(args) -> int:
    cfg = ScanConfig(
        n_range=args.n,
        p_range=args.p,
        k=args.k,
        workers=args.workers,
        max_terms=args.max_terms,
        conductor_only=args.conductor_only,
        on_error=args.on_error,
        effort_bound=args.effort,
    )

    def progress(n, p, rows):
        logging.getLogger("shaforge.scan").info("(%d,%d) %s", n, p, " ".join(r["status"] for r in rows))

    records = run_scan(cfg, checkpoint=args.checkpoint, progress=progress)
    text = render_csv(records) if args.out == "csv" else render_json(records, timing=args.timing)
    if args.output:
        tmp = args.output + ".tmp"
        with open(tmp, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, args.output)
    else:
        sys.stdout.write(text)
    return 0


def cmd_ap(args) -> int:
    curve = _curve_from(args)
    g = global_data(curve)
    primes = primes_up_to(args.limit)
    vals = ap_table(g.model, g, primes, workers=args.workers)
    if args.cache:
        write_ap_cache(args.cache, g.model, args.limit, vals)
    for p, a in zip(primes.tolist(), vals.tolist()):
        print(p, a)
    return 0


def cmd_localdata(args) -> int:
    curve = _curve_from(args)
    g = global_data(curve)
    if args.json:
        print(json.dumps({
            "minimal_model": str(g.model),
            "conductor": g.conductor,
            "c_fin": g.c_fin,
            "disc_min": g.disc_min,
            "primes": [ld.__dict__ for ld in g.locals],
        }, indent=1))
        return 0
    print(f"minimal model  {g.model}")
    print(f"discriminant   {g.disc_min}")
    print(f"conductor      {g.conductor}")
    print(f"c_fin          {g.c_fin}")
    print(f"{'p':>24}  {'kodaira':<8}{'f_p':>4}{'c_p':>5}  {'reduction':<14}{'ord(disc)':>9}")
    for ld in g.locals:
        print(f"{ld.p:>24}  {ld.kodaira:<8}{ld.f_p:>4}{ld.c_p:>5}  {ld.reduction:<14}{ld.ord_disc:>9}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shaforge", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--k", type=int, default=3, help="target decimal accuracy of L(E,1) (default 3)")
        sp.add_argument("--workers", type=int, default=1, help="worker processes")
        sp.add_argument("--max-terms", type=int, default=None,
                        help=f"refuse sums longer than this (default $SHAFORGE_MAX_TERMS or {max_terms_default()})")

    a = sub.add_parser("analyze", help="analytic Sha of one curve")
    _add_curve_args(a)
    common(a)
    a.add_argument("--dry-run", action="store_true", help="report the number of terms and stop")
    a.add_argument("--json", action="store_true", help="print JSON instead of a text report")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("scan", help="scan E_1..E_4(n, p) over a grid")
    s.add_argument("--n", type=_range, required=True, help="n range, e.g. 0..2")
    s.add_argument("--p", type=_range, required=True, help="p range, e.g. -50..50 (0 is skipped)")
    common(s)
    s.add_argument("--checkpoint", help="journal file; an existing one is resumed")
    s.add_argument("--out", choices=("csv", "json"), default="csv")
    s.add_argument("--output", help="write the table here instead of stdout")
    s.add_argument("--on-error", choices=("skip", "halt"), default="skip")
    s.add_argument("--conductor-only", action="store_true", help="stop after conductor and local data")
    s.add_argument("--effort", type=int, default=30, help="factoring effort bound in digits")
    s.add_argument("--timing", action="store_true", help="include per-curve seconds in JSON output")
    s.set_defaults(func=cmd_scan)

    p = sub.add_parser("ap", help="dump a_p for p up to a limit")
    _add_curve_args(p)
    p.add_argument("--limit", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cache", help="also write an APC1 cache file")
    p.set_defaults(func=cmd_ap)

    ld = sub.add_parser("localdata", help="Tate's algorithm at every bad prime")
    _add_curve_args(ld)
    ld.add_argument("--json", action="store_true")
    ld.set_defaults(func=cmd_localdata)
    return ap


def _glue_ranges(argv: list[str]) -> list[str]:
    # "--p -50..50" would otherwise be read as an option; glue it to its flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--n", "--p"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and ".." in nxt:
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_ranges(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s")
    try:
        return args.func(args)
    except ShaForgeError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: invalid-input: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
