"""Grid scans over E_i(n, p) with a checksummed, resumable journal."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import mpmath

from .bsd import format_gs
from .errors import CheckpointCorrupt, ScanHalted, ShaForgeError
from .family import grid
from .pipeline import ClassAnalysis, analyze_class, table_from_cache

log = logging.getLogger(__name__)

CSV_COLUMNS = ["n", "p", "i", "conductor", "torsion", "c_fin", "sha", "sha_sqrt", "gs", "status"]


def fmt_real(v) -> str:
    """Reals at 10 significant digits; empty when absent."""
    if v is None:
        return ""
    v = mpmath.mpf(v)
    if mpmath.isnan(v):
        return ""
    return mpmath.nstr(v, 10, min_fixed=-5, max_fixed=12)


@dataclass
class ScanRecord:
    family_id: str
    n: int
    p: int
    i: int
    conductor: int | None
    torsion: int | None
    c_fin: int | None
    c_infty: str
    s_m: str
    sha: int | None
    sha_sqrt: int | None
    gs: str
    status: str
    timing: float = 0.0

    def csv_row(self) -> list:
        blank = lambda v: "" if v is None else v
        return [self.n, self.p, self.i, blank(self.conductor), blank(self.torsion), blank(self.c_fin),
                blank(self.sha), blank(self.sha_sqrt), self.gs, self.status]


def records_from_class(res: ClassAnalysis) -> list[ScanRecord]:
    out = []
    for i, a in enumerate(res.members, start=1):
        ok = a.status == "ok"
        g = a.gdata
        out.append(ScanRecord(
            family_id=f"E{i}({res.n},{res.p})",
            n=res.n, p=res.p, i=i,
            conductor=None if g is None else g.conductor,
            torsion=a.torsion,
            c_fin=None if g is None else g.c_fin,
            c_infty="" if a.period is None else fmt_real(a.period.c_infty),
            s_m="" if a.truncation is None else fmt_real(a.truncation.s_m),
            sha=a.report.sha_int if ok else None,
            sha_sqrt=a.report.sha_sqrt if ok else None,
            gs=format_gs(a.report.sha_int, g.conductor) if ok else "",
            status=a.status,
            timing=round(a.seconds, 3),
        ))
    return out


def error_records(n: int, p: int, kind: str) -> list[ScanRecord]:
    return [ScanRecord(f"E{i}({n},{p})", n, p, i, None, None, None, "", "", None, None, "", kind)
            for i in (1, 2, 3, 4)]


# ---- journal ----------------------------------------------------------------


def _line(obj) -> bytes:
    body = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return f"{zlib.crc32(body.encode()):08x} {body}\n".encode()


def _parse_line(raw: bytes, lineno: int, path) -> dict:
    text = raw.decode("utf-8", errors="replace").rstrip("\n")
    crc, _, body = text.partition(" ")
    if not body or f"{zlib.crc32(body.encode()):08x}" != crc:
        raise CheckpointCorrupt(f"{path}: checksum mismatch on line {lineno}")
    return json.loads(body)


class Journal:
    """Append-only record of completed classes; one CRC-stamped JSON line each.

    The first line holds the scan parameters; resuming with different ones is
    refused. A final line without its newline is a write torn by a kill and is
    dropped; any complete line with a bad checksum raises CheckpointCorrupt.
    """

    def __init__(self, path, params: dict):
        self.path = Path(path)
        self.params = params
        self.done: dict[tuple[int, int], list[dict]] = {}
        if self.path.exists() and self.path.stat().st_size:
            self._load()
        else:
            self._rewrite([_line({"header": params})])

    def _load(self):
        data = self.path.read_bytes()
        lines = data.split(b"\n")
        tail = lines.pop()  # empty when the file ends in a newline
        if tail:
            log.warning("dropping torn final journal line (%d bytes)", len(tail))
        entries = [_parse_line(raw, k + 1, self.path) for k, raw in enumerate(lines)]
        if not entries or entries[0].get("header") != self.params:
            raise CheckpointCorrupt(f"{self.path}: journal was written for different scan parameters")
        for e in entries[1:]:
            self.done[(e["n"], e["p"])] = e["records"]
        if tail:
            self._rewrite([_line(e) for e in entries])

    def _rewrite(self, lines):
        tmp = self.path.with_name(self.path.name + ".tmp")
        with open(tmp, "wb") as fh:
            fh.write(b"".join(lines))
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.path)

    def append(self, n: int, p: int, records: list[ScanRecord]):
        rows = [asdict(r) for r in records]
        with open(self.path, "ab") as fh:
            fh.write(_line({"n": n, "p": p, "records": rows}))
            fh.flush()
            os.fsync(fh.fileno())
        self.done[(n, p)] = rows


# ---- the scan ---------------------------------------------------------------


@dataclass
class ScanConfig:
    n_range: tuple[int, int]
    p_range: tuple[int, int]
    k: int = 3
    workers: int = 1
    max_terms: int | None = None
    conductor_only: bool = False
    on_error: str = "skip"
    effort_bound: int = 30

    def params(self) -> dict:
        return {"n": list(self.n_range), "p": list(self.p_range), "k": self.k,
                "conductor_only": self.conductor_only, "effort_bound": self.effort_bound}


def _run_class(args) -> tuple[int, int, list[dict], str | None]:
    n, p, cfg, cache_dir = args
    hook = None
    if cache_dir is not None:
        hook = table_from_cache(lambda g: os.path.join(cache_dir, f"E1_{n}_{p}.apc"))
    try:
        res = analyze_class(n, p, k=cfg.k, max_terms=cfg.max_terms, effort_bound=cfg.effort_bound,
                            conductor_only=cfg.conductor_only, table_hook=hook)
        recs = records_from_class(res)
    except ShaForgeError as exc:
        if cfg.on_error == "halt":
            return n, p, [], f"{exc.kind}: {exc}"
        recs = error_records(n, p, exc.kind)
    except Exception as exc:  # noqa: BLE001 - a scan must outlive one bad class
        if cfg.on_error == "halt":
            return n, p, [], f"error: {exc!r}"
        log.exception("class (%d,%d) failed", n, p)
        recs = error_records(n, p, "error")
    return n, p, [asdict(r) for r in recs], None


def run_scan(cfg: ScanConfig, checkpoint=None, progress=None) -> list[ScanRecord]:
    """Scan the grid in order; completed classes are journaled before moving on."""
    classes = grid(cfg.n_range, cfg.p_range)
    journal = Journal(checkpoint, cfg.params()) if checkpoint else None
    cache_dir = None
    if checkpoint:
        cache_dir = str(checkpoint) + ".apc"
        os.makedirs(cache_dir, exist_ok=True)
    results: dict[tuple[int, int], list[dict]] = dict(journal.done) if journal else {}
    todo = [(n, p) for n, p in classes if (n, p) not in results]
    log.info("%d classes in grid, %d already done", len(classes), len(classes) - len(todo))

    def consume(it):
        for n, p, rows, err in it:
            if err is not None:
                raise ScanHalted(f"class ({n},{p}) failed: {err}")
            results[(n, p)] = rows
            if journal is not None:
                journal.append(n, p, [ScanRecord(**r) for r in rows])
                stale = os.path.join(cache_dir, f"E1_{n}_{p}.apc")
                if os.path.exists(stale):
                    os.remove(stale)
            if progress:
                progress(n, p, rows)

    jobs = [(n, p, cfg, cache_dir) for n, p in todo]
    if cfg.workers > 1 and len(jobs) > 1:
        pool = ProcessPoolExecutor(max_workers=cfg.workers)
        try:
            consume(pool.map(_run_class, jobs))  # map yields in grid order
        finally:
            pool.shutdown(wait=True, cancel_futures=True)
    else:
        consume(map(_run_class, jobs))
    out = []
    for key in classes:
        out.extend(ScanRecord(**r) for r in results[key])
    return out


def render_csv(records: list[ScanRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def render_json(records: list[ScanRecord], timing: bool = False) -> str:
    rows = []
    for r in records:
        d = asdict(r)
        if not timing:
            d.pop("timing")
        rows.append(d)
    return json.dumps(rows, indent=1) + "\n"
