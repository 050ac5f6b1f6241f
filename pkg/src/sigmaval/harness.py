"""Range scans, report assembly and serialization.

A scan splits ``[start, end]`` into fixed-size chunks, so the chunk
boundaries do not depend on the worker count.  Chunks go to a process pool
and come back merged in ascending order, which keeps the output
byte-identical for any number of workers.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .bounds import (
    Condition,
    LNSolution,
    Relation,
    _ln_product,
    condition_label,
    relation_of,
    search_ln_solutions,
)
from .core_arith import Factorization, SpfSieve, int_log, is_prime, sigma
from .valuation import component_valuation

log = logging.getLogger(__name__)

CHUNK = 50_000
FORMATS = ("json", "csv", "text")


@dataclass
class ScanReport:
    config: dict[str, Any]
    records: list[dict[str, Any]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    duration: float = 0.0
    columns: tuple[str, ...] = ()

    @property
    def counterexample(self) -> bool:
        return bool(self.summary.get("violations") or self.summary.get("equality_mismatches"))

    def to_dict(self) -> dict[str, Any]:
        # duration stays out: output must not vary between runs
        return {"config": self.config, "records": self.records, "summary": self.summary}


# ---------------------------------------------------------------------------
# bound scan
# ---------------------------------------------------------------------------

_sieve: SpfSieve | None = None

BOUND_COLUMNS = (
    "n", "p", "valuation", "floor_log", "ceil_log", "relation",
    "equality_class", "condition", "components",
)


def _init_worker(limit: int) -> None:
    global _sieve
    if _sieve is None or _sieve.limit < limit:
        _sieve = SpfSieve(max(limit, 2))


def _component_text(parts: list[dict]) -> str:
    return ";".join(f"{c['q']}^{c['k']}:{c['branch']}:{c['value']}" for c in parts)


def _scan_chunk(p: int, lo: int, hi: int, all_records: bool) -> dict[str, Any]:
    assert _sieve is not None
    spf = _sieve.raw
    cache: dict[tuple[int, int], tuple] = {}
    relations: Counter = Counter()
    conditions: Counter = Counter()
    equality, outside, violations, mismatches, records = [], [], [], [], []
    odd = p != 2

    for n in range(lo, hi + 1):
        # inline smallest-prime-factor walk
        comps = []
        m = n
        while m > 1:
            q = spf[m] or m
            k = 0
            while m % q == 0:
                m //= q
                k += 1
            comps.append((q, k))

        total = 0
        above = []
        mersenne = True
        parts = []
        for q, k in comps:
            key = (q, k)
            entry = cache.get(key)
            if entry is None:
                v, branch = component_valuation(p, q, k)
                clo, chi, _ = int_log(p, q**k)
                entry = cache[key] = (v, branch.value, clo, chi)
            v = entry[0]
            total += v
            if v > entry[2]:
                above.append(q)
            if k != 1 or (q + 1) & q:
                mersenne = False
            parts.append(entry)

        flo, fhi, _ = int_log(p, n)
        rel = relation_of(total, flo, fhi)
        relations[rel.value] += 1
        cond = condition_label(p, above).value if odd else None
        if odd:
            conditions[cond] += 1

        notable = False
        eq_class = None
        if rel is Relation.AT_CEIL:
            equality.append(n)
            notable = True
        if rel is Relation.VIOLATION:
            violations.append(n)
            notable = True
        if odd:
            if cond not in (Condition.COND1.value, Condition.COND2.value):
                outside.append(n)
                notable = True
        else:
            is_eq = rel is Relation.AT_CEIL
            if is_eq != (mersenne and n > 1):
                mismatches.append(n)
                notable = True
            if mersenne and n > 1:
                eq_class = "MersenneProduct{" + ",".join(str(q) for q, _ in comps) + "}"

        if notable or all_records:
            if odd and all(e[0] == e[3] for e in parts) and comps:
                prod_ = _ln_product(p, Factorization(n, tuple(comps)))
                eq_class = str(prod_) if prod_ else None
            records.append({
                "n": n,
                "p": p,
                "valuation": total,
                "floor_log": flo,
                "ceil_log": fhi,
                "relation": rel.value,
                "equality_class": eq_class,
                "condition": cond,
                "components": [
                    {"q": q, "k": k, "branch": e[1], "value": e[0]}
                    for (q, k), e in zip(comps, parts)
                ],
            })

    return {
        "relations": relations,
        "conditions": conditions,
        "equality": equality,
        "outside": outside,
        "violations": violations,
        "mismatches": mismatches,
        "records": records,
    }


def _chunks(start: int, end: int, size: int = CHUNK) -> list[tuple[int, int]]:
    out = []
    lo = start
    while lo <= end:
        hi = min(end, (lo // size + 1) * size - 1)
        out.append((lo, hi))
        lo = hi + 1
    return out


def _run_chunk(args: tuple) -> dict[str, Any]:
    return _scan_chunk(*args)


def scan_bound(
    p: int,
    start: int,
    end: int,
    workers: int = 1,
    all_records: bool = False,
) -> ScanReport:
    """Bound and condition scan of ``nu_p(sigma(n))`` over ``[start, end]``.

    ``n = 1`` is skipped (the bound reports need ``n >= 2``).  Records are
    kept for equality indices, violations, equality mismatches and indices
    outside conditions (1)/(2), or for every n with ``all_records``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if start > end:
        raise ValueError(f"empty range [{start}, {end}]")
    if workers < 1:
        raise ValueError("worker count must be >= 1")
    t0 = time.perf_counter()
    lo = max(start, 2)
    jobs = [(p, a, b, all_records) for a, b in _chunks(lo, end)] if lo <= end else []
    if workers == 1 or len(jobs) <= 1:
        _init_worker(end)
        parts = [_run_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(end,)) as pool:
            parts = list(pool.map(_run_chunk, jobs))

    relations: Counter = Counter()
    conditions: Counter = Counter()
    merged: dict[str, list] = {k: [] for k in ("equality", "outside", "violations", "mismatches", "records")}
    for part in parts:
        relations.update(part["relations"])
        conditions.update(part["conditions"])
        for key in merged:
            merged[key].extend(part[key])

    summary: dict[str, Any] = {
        "count": sum(relations.values()),
        "relations": {r.value: relations.get(r.value, 0) for r in Relation},
        "equality_indices": merged["equality"],
        "violations": merged["violations"],
    }
    if p == 2:
        summary["equality_mismatches"] = merged["mismatches"]
    else:
        summary["conditions"] = {c.value: conditions.get(c.value, 0) for c in Condition}
        summary["outside_cond12"] = merged["outside"]

    report = ScanReport(
        config={"command": "scan-bound", "p": p, "start": start, "end": end,
                "all_records": all_records},
        records=merged["records"],
        summary=summary,
        duration=time.perf_counter() - t0,
        columns=BOUND_COLUMNS,
    )
    log.info("scan-bound p=%d [%d, %d]: %d indices in %.2fs",
             p, start, end, summary["count"], report.duration)
    return report


# ---------------------------------------------------------------------------
# LN search and sequences
# ---------------------------------------------------------------------------

LN_COLUMNS = ("p", "q", "k", "s", "higher_power", "value")


def ln_report(q_max: int, k_max: int) -> ScanReport:
    t0 = time.perf_counter()
    sols: list[LNSolution] = search_ln_solutions(q_max, k_max)
    records = [
        {"p": s.p, "q": s.q, "k": s.k, "s": s.s, "higher_power": s.s >= 2,
         "value": str(s.p**s.s)}
        for s in sols
    ]
    summary = {
        "count": len(records),
        "higher_powers": [[s.p, s.q, s.k, s.s] for s in sols if s.s >= 2],
        "violations": [],
    }
    return ScanReport(
        config={"command": "search-ln", "q_max": q_max, "k_max": k_max},
        records=records,
        summary=summary,
        duration=time.perf_counter() - t0,
        columns=LN_COLUMNS,
    )


def sigma_sequence(modulus: int, limit: int) -> list[int]:
    """All ``1 <= r <= limit`` with ``sigma(r) % modulus == 0``."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if limit < 1:
        return []
    sieve = SpfSieve(max(limit, 2))
    return [r for r in range(1, limit + 1) if sigma(sieve.factorize(r)) % modulus == 0]


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return _component_text(value) if value and isinstance(value[0], dict) else " ".join(map(str, value))
    return str(value)


def to_json(report: ScanReport) -> str:
    return json.dumps(report.to_dict(), indent=1, ensure_ascii=False) + "\n"


def to_csv(report: ScanReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    columns = report.columns
    writer.writerow(columns)
    for rec in report.records:
        writer.writerow([_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def to_text(report: ScanReport) -> str:
    lines = [" ".join(f"{k}={v}" for k, v in report.config.items())]
    for rec in report.records:
        lines.append("  ".join(f"{c}={_cell(rec.get(c))}" for c in report.columns))
    for key, value in report.summary.items():
        if isinstance(value, dict):
            value = ", ".join(f"{k}: {v}" for k, v in value.items())
        elif isinstance(value, list):
            value = f"[{len(value)}] " + " ".join(map(str, value[:50])) + (" ..." if len(value) > 50 else "")
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def render(report: ScanReport, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown format {fmt!r}")
