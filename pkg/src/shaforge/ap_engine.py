"""L-series coefficients: a_p at every prime and the multiplicative extension to a_n."""

from __future__ import annotations

import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .ec_core import EXHAUSTIVE_LIMIT, WeierstrassCurve, _count_p2, count_points_mod_p, invariants
from .intarith import primes_up_to
from .localdata import GlobalArithData

DEFAULT_BLOCK = 1 << 16
_BAD_AP = {"split-mult": 1, "nonsplit-mult": -1, "additive": 0}


@dataclass
class CoefficientBlock:
    start: int
    values: np.ndarray  # a_n for n in [start, start + len(values))

    @property
    def stop(self) -> int:
        return self.start + len(self.values)


def ap(c: WeierstrassCurve, g: GlobalArithData, p: int) -> int:
    """a_p of the minimal model ``c``; bad primes come from the Tate record."""
    ld = g.local(p)
    if ld is not None and ld.reduction != "good":
        return _BAD_AP[ld.reduction]
    return p + 1 - count_points_mod_p(c, p)


def _good_chunk(args) -> np.ndarray:
    ainvs, primes, threshold = args
    inv = invariants(WeierstrassCurve(*ainvs))
    cols = [[v % int(p) for p in primes] for v in (inv.b2, inv.b4, inv.b6, -27 * inv.c4, -54 * inv.c6)]
    arrs = [np.asarray(col, dtype=np.int64) for col in cols]
    return kernels.ap_good_batch(np.asarray(primes, dtype=np.int64), *arrs, threshold)


def _chunks(primes: np.ndarray, workers: int) -> list[np.ndarray]:
    # work per prime grows like p below the exhaustive limit; balance on sum(p)
    if len(primes) == 0:
        return []
    nchunks = max(1, 4 * workers)
    weights = np.cumsum(np.minimum(primes, EXHAUSTIVE_LIMIT).astype(np.float64))
    cuts = np.searchsorted(weights, weights[-1] * np.arange(1, nchunks) / nchunks)
    return [c for c in np.split(primes, cuts) if len(c)]


def ap_table(
    c: WeierstrassCurve,
    g: GlobalArithData,
    primes: np.ndarray,
    workers: int = 1,
    threshold: int = EXHAUSTIVE_LIMIT,
) -> np.ndarray:
    """a_p for every prime in ``primes`` (ascending); parallel over disjoint chunks."""
    primes = np.asarray(primes, dtype=np.int64)
    out = np.zeros(len(primes), dtype=np.int64)
    bad = {ld.p: _BAD_AP[ld.reduction] for ld in g.locals}
    good_mask = np.ones(len(primes), dtype=bool)
    for k, p in enumerate(primes.tolist()):
        if p in bad:
            out[k] = bad[p]
            good_mask[k] = False
        elif p == 2:
            out[k] = 3 - _count_p2(c)
            good_mask[k] = False
    good = primes[good_mask]
    chunks = _chunks(good, workers)
    jobs = [(c.ainvs, ch.tolist(), threshold) for ch in chunks]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_good_chunk, jobs))
    else:
        parts = [_good_chunk(j) for j in jobs]
    if parts:
        out[good_mask] = np.concatenate(parts)
    return out


class APTable:
    """All a_p for p <= m plus prime-power tables for p <= sqrt(m)."""

    def __init__(self, c, g, m, workers=1, threshold=EXHAUSTIVE_LIMIT, primes=None, values=None):
        self.m = m
        self.primes = primes_up_to(m) if primes is None else np.asarray(primes, dtype=np.int64)
        if values is None:
            values = ap_table(c, g, self.primes, workers=workers, threshold=threshold)
        self.values = np.asarray(values, dtype=np.int64)
        bad = {ld.p for ld in g.locals if ld.reduction != "good"}
        self.powers: dict[int, np.ndarray] = {}
        for p, a in zip(self.primes.tolist(), self.values.tolist()):
            if p * p > m:
                break
            seq = [1, a]
            pk = p
            while pk * p <= m:
                pk *= p
                seq.append(a * seq[-1] if p in bad else a * seq[-1] - p * seq[-2])
            self.powers[p] = np.asarray(seq, dtype=np.int64)

    def lookup(self, ps: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.primes, ps)
        return self.values[idx]


def _fill_block(table: APTable, start: int, stop: int) -> np.ndarray:
    n = np.arange(start, stop, dtype=np.int64)
    rem = n.copy()
    val = np.ones(stop - start, dtype=np.int64)
    for q, pw in table.powers.items():
        if q * q >= stop:
            break
        first = -(-start // q) * q
        if first >= stop:
            continue
        idx = np.arange(first - start, stop - start, q)
        sub = rem[idx] // q
        e = np.ones(len(idx), dtype=np.int64)
        while True:
            mask = sub % q == 0
            if not mask.any():
                break
            sub[mask] //= q
            e[mask] += 1
        rem[idx] = sub
        val[idx] *= pw[e]
    big = rem > 1
    if big.any():
        val[big] *= table.lookup(rem[big])
    return val


def an_stream(
    c: WeierstrassCurve,
    g: GlobalArithData,
    m: int,
    block_size: int = DEFAULT_BLOCK,
    workers: int = 1,
    table: APTable | None = None,
) -> Iterator[CoefficientBlock]:
    """Yield a_1..a_m in consecutive blocks via a segmented multiplicative sieve."""
    if m < 1:
        raise ValueError("m must be positive")
    if table is None:
        table = APTable(c, g, m, workers=workers)
    for start in range(1, m + 1, block_size):
        stop = min(start + block_size, m + 1)
        yield CoefficientBlock(start, _fill_block(table, start, stop))


def an_array(c, g, m, **kw) -> np.ndarray:
    """a_0..a_m as one array (a_0 = 0); convenience for small m."""
    out = np.zeros(m + 1, dtype=np.int64)
    for blk in an_stream(c, g, m, **kw):
        out[blk.start : blk.stop] = blk.values
    return out


# ---- APC1 cache file ------------------------------------------------------------

MAGIC = b"APC1"


def _write_varint(buf: io.BytesIO, v: int) -> None:
    while True:
        byte = v & 0x7F
        v >>= 7
        if v:
            buf.write(bytes((byte | 0x80,)))
        else:
            buf.write(bytes((byte,)))
            return


def _read_varint(data: bytes, pos: int) -> tuple[int, int]:
    shift = v = 0
    while True:
        if pos >= len(data):
            raise ValueError("truncated varint in a_p cache")
        b = data[pos]
        pos += 1
        v |= (b & 0x7F) << shift
        shift += 7
        if not b & 0x80:
            return v, pos


def encode_ap_cache(c: WeierstrassCurve, m: int, values) -> bytes:
    buf = io.BytesIO()
    buf.write(MAGIC)
    header = json.dumps({"curve": str(c), "m": m}, separators=(",", ":")).encode()
    _write_varint(buf, len(header))
    buf.write(header)
    vals = [int(v) for v in values]
    _write_varint(buf, len(vals))
    for v in vals:
        _write_varint(buf, (v << 1) ^ (v >> 63) if v < 0 else v << 1)  # zigzag
    return buf.getvalue()


def decode_ap_cache(data: bytes) -> tuple[WeierstrassCurve, int, list[int]]:
    if data[:4] != MAGIC:
        raise ValueError("not an APC1 a_p cache")
    hlen, pos = _read_varint(data, 4)
    header = json.loads(data[pos : pos + hlen])
    pos += hlen
    count, pos = _read_varint(data, pos)
    vals = []
    for _ in range(count):
        z, pos = _read_varint(data, pos)
        vals.append((z >> 1) ^ -(z & 1))
    if pos != len(data):
        raise ValueError("trailing bytes in a_p cache")
    return WeierstrassCurve.parse(header["curve"]), header["m"], vals


def write_ap_cache(path, c, m, values) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(encode_ap_cache(c, m, values))
    os.replace(tmp, path)


def load_table(path, c, g, m) -> APTable | None:
    """APTable from a cache file when it matches this curve and covers m."""
    try:
        with open(path, "rb") as fh:
            cc, mm, vals = decode_ap_cache(fh.read())
    except (OSError, ValueError):
        return None
    if cc != c or mm < m:
        return None
    primes = primes_up_to(mm)
    if len(primes) != len(vals):
        return None
    keep = int(np.searchsorted(primes, m, side="right"))
    return APTable(c, g, m, primes=primes[:keep], values=vals[:keep])


def hasse_ok(p: int, a: int) -> bool:
    return a * a <= 4 * p

