"""Catalog verification harness: construct every real root up to a
height bound and run the full check battery on each.

Per-root results are computed independently and the report is sorted by
root, so its content does not depend on the worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple

from .errors import QuiverForgeError
from .linalg import PrimeField
from .quiver import REAL, SIMPLE, classify_root, enumerate_real_roots
from .reps import end_dim, is_indecomposable_oracle
from .functors import maximal_rank_report
from .serialize import parse_field_flag
from .three_vertex import FamilyParams, build_family, construct, predicted_end_dim
from .trees import coefficient_quiver, is_tree, nonzero_count

SCHEMA_VERSION = 1
DEFAULT_ORACLE_BUDGET = 3**6


@dataclass
class RootRecord:
    alpha: Tuple[int, ...]
    ok: bool
    dims_match: bool = False
    maxrank_ok: bool = False
    maxrank_violations: list = dc_field(default_factory=list)
    tree_ok: bool = False
    nonzero_ok: bool = False
    end_predicted: Optional[int] = None
    end_computed: Optional[int] = None
    end_ok: bool = False
    oracle: str = "skipped"
    trace: Optional[dict] = None
    error: Optional[str] = None
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "ok": self.ok,
            "dims_match": self.dims_match,
            "maxrank_ok": self.maxrank_ok,
            "maxrank_violations": self.maxrank_violations,
            "tree_ok": self.tree_ok,
            "nonzero_ok": self.nonzero_ok,
            "end_predicted": self.end_predicted,
            "end_computed": self.end_computed,
            "end_ok": self.end_ok,
            "oracle": self.oracle,
            "trace": self.trace,
            "error": self.error,
            "elapsed": self.elapsed,
        }


@dataclass
class CatalogReport:
    family: Tuple[int, int, int]
    bound: int
    field: str
    records: List[RootRecord]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "family": list(self.family),
            "bound": self.bound,
            "field": self.field,
            "status": "pass" if self.ok else "fail",
            "records": [r.to_json() for r in self.records],
        }


def check_root(task) -> RootRecord:
    """Construct and verify a single root.  Takes a picklable tuple
    (f, g, h, alpha, field_flag, oracle_budget)."""
    f, g, h, alpha_t, field_flag, budget = task
    start = time.perf_counter()
    p = FamilyParams(f, g, h)
    q = build_family(p)
    field = parse_field_flag(field_flag)
    alpha = {v: alpha_t[k] for k, v in enumerate(q.vertices)}
    rec = RootRecord(alpha=tuple(alpha_t), ok=False)
    try:
        rep, trace = construct(alpha, p, field)
        rec.trace = trace.to_json()
        rec.dims_match = rep.dims == alpha
        violations = maximal_rank_report(rep)
        rec.maxrank_ok = not violations
        rec.maxrank_violations = [v.to_json() for v in violations]
        cq = coefficient_quiver(rep)
        rec.tree_ok = is_tree(cq)
        rec.nonzero_ok = nonzero_count(rep) == rep.total_dim() - 1
        rec.end_predicted = predicted_end_dim(trace)
        rec.end_computed = end_dim(rep)
        rec.end_ok = rec.end_predicted == rec.end_computed
        if isinstance(field, PrimeField):
            res = is_indecomposable_oracle(rep, budget)
            rec.oracle = res.verdict
        else:
            rec.oracle = "skipped"
        oracle_ok = rec.oracle in ("indecomposable", "inconclusive", "skipped")
        rec.ok = (
            rec.dims_match
            and rec.maxrank_ok
            and rec.tree_ok
            and rec.nonzero_ok
            and rec.end_ok
            and oracle_ok
        )
    except QuiverForgeError as exc:
        rec.error = str(exc)
    rec.elapsed = time.perf_counter() - start
    return rec


def run_catalog(
    p: FamilyParams,
    bound: int,
    field_flag: str = "q",
    jobs: int = 1,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
) -> CatalogReport:
    q = build_family(p)
    roots = enumerate_real_roots(q, bound)
    roots = [r for r in roots if classify_root(q, r) in (SIMPLE, REAL)]
    tasks = [
        (p.f, p.g, p.h, tuple(r[v] for v in q.vertices), field_flag, oracle_budget)
        for r in roots
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(check_root, tasks))
    else:
        records = [check_root(t) for t in tasks]
    records.sort(key=lambda r: r.alpha)
    return CatalogReport((p.f, p.g, p.h), bound, field_flag, records)
