"""Sweeps comparing the closed-form classification with exact ranks."""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources

from .classify import Classification, classify, iter_specs
from .oracle import rank
from .space import random_coframe
from .wedge import MapSpec, build_matrix

__all__ = ["SweepRecord", "SweepReport", "load_discrepancies", "check_spec", "sweep", "DEFAULT_SAFETY_BOUND"]

DEFAULT_SAFETY_BOUND = 7


class ResourceBoundExceeded(RuntimeError):
    pass


def load_discrepancies() -> dict[MapSpec, dict]:
    """Specs where a published statement disagrees with the closed-form criterion."""
    text = resources.files("wedgemaps").joinpath("data/discrepancies.json").read_text()
    out = {}
    for entry in json.loads(text):
        s = entry["spec"]
        out[MapSpec(s["N"], s["l"], s["s"], s["n"], s["k"])] = entry
    return out


@dataclass
class SweepRecord:
    spec: MapSpec
    predicate: Classification
    rank: int
    dom_dim: int
    cod_dim: int
    invariance_ranks: list[int] = field(default_factory=list)
    flag: str | None = None
    claim: dict | None = None

    @property
    def oracle(self) -> Classification:
        return Classification.from_rank(self.rank, self.dom_dim, self.cod_dim)

    @property
    def agree(self) -> bool:
        return self.predicate == self.oracle

    @property
    def invariant(self) -> bool:
        return all(r == self.rank for r in self.invariance_ranks)

    @property
    def claim_holds(self) -> bool | None:
        if self.claim is None:
            return None
        oracle = asdict(self.oracle)
        return all(oracle[key] == value for key, value in self.claim.items())

    def to_json(self) -> dict:
        out = {
            "spec": asdict(self.spec),
            "dims": [self.dom_dim, self.cod_dim],
            "rank": self.rank,
            "predicate": asdict(self.predicate),
            "oracle": asdict(self.oracle),
            "agree": self.agree,
        }
        if self.invariance_ranks:
            out["invariance_ranks"] = self.invariance_ranks
        if self.flag:
            out["flag"] = self.flag
            out["claim"] = self.claim
            out["claim_holds"] = self.claim_holds
        return out


@dataclass
class SweepReport:
    params: dict
    records: list[SweepRecord]
    elapsed: float
    aborted: bool = False

    @property
    def discrepancies(self) -> list[SweepRecord]:
        """Records where the criterion and the rank disagree."""
        return [r for r in self.records if not r.agree]

    @property
    def unexplained(self) -> list[SweepRecord]:
        """Disagreements at specs absent from the discrepancy manifest."""
        return [r for r in self.discrepancies if r.flag is None]

    @property
    def invariance_failures(self) -> list[SweepRecord]:
        return [r for r in self.records if not r.invariant]

    @property
    def flagged(self) -> list[SweepRecord]:
        return [r for r in self.records if r.flag]

    @property
    def exit_code(self) -> int:
        if self.aborted:
            return 3
        return 1 if self.unexplained or self.invariance_failures else 0

    def to_json(self) -> dict:
        return {
            "params": self.params,
            "count": len(self.records),
            "records": [r.to_json() for r in self.records],
            "discrepancies": [asdict(r.spec) for r in self.discrepancies],
            "invariance_failures": [asdict(r.spec) for r in self.invariance_failures],
            "flagged": [r.to_json() for r in self.flagged],
            "aborted": self.aborted,
            "elapsed": round(self.elapsed, 3),
        }

    def summary(self) -> str:
        lines = [
            f"specs checked: {len(self.records)}",
            f"criterion/rank disagreements: {len(self.discrepancies)} (unexplained: {len(self.unexplained)})",
            f"coframe invariance failures: {len(self.invariance_failures)}",
        ]
        for r in self.flagged:
            verdict = r.oracle.kind
            lines.append(
                f"flagged {r.spec}: rank {r.rank}, dims {r.dom_dim}->{r.cod_dim}, computed {verdict}; "
                f"claim {r.claim} {'holds' if r.claim_holds else 'is refuted'} [{r.flag}]"
            )
        if self.aborted:
            lines.append("ABORTED: resource bound exceeded, report is partial")
        lines.append(f"elapsed: {self.elapsed:.2f}s")
        return "\n".join(lines)


def check_spec(spec: MapSpec, seed: int = 0, trials: int = 0) -> SweepRecord:
    """Rank of ``W`` under the standard coframe plus ``trials`` random coframes."""
    M = build_matrix(spec)
    r = rank(M).rank
    d, c = spec.dims
    inv = []
    if trials:
        rng = random.Random(f"{seed}:{spec.astuple()}")
        for _ in range(trials):
            cf = random_coframe(spec.N, rng)
            inv.append(rank(build_matrix(spec, cf)).rank)
    return SweepRecord(spec, classify(spec), r, d, c, inv)


def _check(args):
    return check_spec(*args)


def sweep(
    max_N: int,
    max_s: int | None = None,
    max_l: int | None = None,
    *,
    seed: int = 0,
    invariance_trials: int = 1,
    invariance_max_N: int = 4,
    workers: int = 1,
    time_limit: float | None = None,
    safety_bound: int = DEFAULT_SAFETY_BOUND,
) -> SweepReport:
    """Check every valid spec in range; records come back sorted by spec."""
    params = {
        "max_N": max_N,
        "max_s": max_s,
        "max_l": max_l,
        "seed": seed,
        "invariance_trials": invariance_trials,
        "invariance_max_N": invariance_max_N,
    }
    start = time.perf_counter()
    if max_N > safety_bound:
        raise ResourceBoundExceeded(f"max_N={max_N} exceeds the safety bound {safety_bound}")
    manifest = load_discrepancies()
    specs = sorted(iter_specs(max_N, max_s, max_l))
    jobs = [(sp, seed, invariance_trials if sp.N <= invariance_max_N else 0) for sp in specs]
    records: list[SweepRecord] = []
    aborted = False
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_check, jobs, chunksize=4))
    else:
        for job in jobs:
            if time_limit is not None and time.perf_counter() - start > time_limit:
                aborted = True
                break
            records.append(_check(job))
    for rec in records:
        entry = manifest.get(rec.spec)
        if entry:
            rec.flag = entry["flag"]
            rec.claim = entry["claim"]
    return SweepReport(params, records, time.perf_counter() - start, aborted)
