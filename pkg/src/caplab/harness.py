"""Claim-suite orchestration, canonical report files and witness replay."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import audits
from .psi_map import ComplementStrategy
from .reports import ClaimReport, dumps, loads

ALL_STRATEGIES = tuple(s.value for s in ComplementStrategy)


@dataclass
class SuiteConfig:
    primes: list[int] = field(default_factory=lambda: [2, 3, 5])
    max_order: int = 81
    strategies: list[str] = field(default_factory=lambda: list(ALL_STRATEGIES))
    seeds: int = 1
    transfer_max_order: int | None = None
    jobs: int = 1
    out: str | None = None
    inject_fault: int | None = None

    def __post_init__(self):
        if not self.primes or any(p < 2 for p in self.primes):
            raise ValueError("primes must be a nonempty list of primes")
        if self.max_order < 1 or self.seeds < 0 or self.jobs < 1:
            raise ValueError("bounds must be positive")
        for s in self.strategies:
            ComplementStrategy(s)
        if self.transfer_max_order is None:
            self.transfer_max_order = self.max_order

    def meta(self) -> dict:
        """Everything that determines the report content; parallelism and paths excluded."""
        d = asdict(self)
        for k in ("jobs", "out"):
            d.pop(k)
        return d


@dataclass
class SuiteResult:
    reports: list[ClaimReport]
    meta: dict

    @property
    def errors(self) -> list[ClaimReport]:
        return [r for r in self.reports if r.verdict == "error"]

    @property
    def theorem_failures(self) -> list[ClaimReport]:
        return [r for r in self.reports if r.status == "theorem" and r.verdict == "fail"]

    @property
    def exit_code(self) -> int:
        return 0 if not self.errors and not self.theorem_failures else 1

    def text(self) -> str:
        return dumps(self.reports, self.meta)

    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.reports:
            row = out.setdefault(r.claim, {})
            row[r.verdict] = row.get(r.verdict, 0) + 1
        return dict(sorted(out.items()))


def run_suite(config: SuiteConfig) -> SuiteResult:
    tasks = audits.catalog_tasks(config.primes, config.max_order, config.strategies, config.seeds,
                                 config.transfer_max_order)
    if config.jobs == 1:
        chunks = [audits.run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            chunks = list(pool.map(audits.run_task, tasks, chunksize=1))
    reports = [ClaimReport.from_dict(d) for chunk in chunks for d in chunk]
    if config.inject_fault is not None:
        reports = inject_fault(reports, config.inject_fault)
    result = SuiteResult(reports, config.meta())
    if config.out:
        Path(config.out).write_text(result.text())
    return result


def inject_fault(reports: list[ClaimReport], seed: int) -> list[ClaimReport]:
    """Flip one passing theorem-status verdict to fail (seeded choice)."""
    idx = [i for i, r in enumerate(reports) if r.status == "theorem" and r.verdict == "pass"]
    if not idx:
        return reports
    i = random.Random(seed).choice(idx)
    r = reports[i]
    out = list(reports)
    out[i] = ClaimReport(r.claim, r.instance, "fail", {"injected": True}, "injected fault", r.status)
    return out


# ---------------------------------------------------------------------------
# replay


class ReplayError(ValueError):
    pass


@dataclass
class ReplayResult:
    recorded: ClaimReport
    replayed: ClaimReport

    @property
    def match(self) -> bool:
        return self.recorded.verdict == self.replayed.verdict


def load_witness(path: str | Path, index: int | None = None) -> ClaimReport:
    """A single report object, or a suite report file plus an index (default: first fail)."""
    text = Path(path).read_text()
    if not text.strip():
        raise ReplayError(f"{path}: empty witness file")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReplayError(f"{path}: not JSON ({exc})") from exc
    if isinstance(doc, dict) and "reports" in doc:
        _, reports = loads(text)
        if index is None:
            index = next((i for i, r in enumerate(reports) if r.verdict == "fail"), None)
            if index is None:
                raise ReplayError(f"{path}: no failing report to replay")
        return reports[index]
    if not isinstance(doc, dict) or not doc:
        raise ReplayError(f"{path}: witness must be a report object")
    try:
        return ClaimReport.from_dict(doc)
    except (KeyError, ValueError) as exc:
        raise ReplayError(f"{path}: malformed report ({exc})") from exc


def replay(report: ClaimReport) -> ReplayResult:
    """Re-execute the instance behind one report; CC1 re-checks the witness element itself."""
    inst = report.instance
    if report.claim == "CC1-complement-hypothesis" and report.witness and "element" in report.witness:
        return ReplayResult(report, audits.cc1_replay(inst["group"], report.witness["element"]))
    task = _task_for(report)
    fresh = [ClaimReport.from_dict(d) for d in audits.run_task(task)]
    for r in fresh:
        if r.claim == report.claim and r.instance == inst:
            return ReplayResult(report, r)
    raise ReplayError(f"replay of {report.claim} produced no report for {inst}")


def _task_for(r: ClaimReport) -> tuple:
    inst = r.instance
    if "group" not in inst:
        raise ReplayError("witness instance has no group")
    g = inst["group"]
    c = r.claim
    for kind, (_, claims) in audits.TASKS.items():
        if c not in claims:
            continue
        if kind == "abelian":
            return (kind, g, inst["strategy"], inst.get("pairing_seed", 0))
        if kind == "cc1":
            return (kind, g)
        if kind == "cn1":
            return (kind, g, inst["strategy"], inst["phi_seed"])
        if kind == "cn2":
            return (kind, g, inst["pairing_seed"])
        if kind == "gs2":
            return (kind, int(g.split(":")[0]))
        if kind == "transfer":
            return (kind, g)
        if kind == "capitulation":
            return (kind, g, inst["strategy"])
    raise ReplayError(f"no replay for claim {c}")
