"""Check results, report assembly and the check runner."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .class_algebra import DegreeOverflow

REPORT_VERSION = "1"
STATUSES = ("pass", "fail", "reported")


@dataclass
class CheckResult:
    name: str
    anchor: str
    params: dict
    status: str
    witness: Any = None
    millis: int = 0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_json(self) -> dict:
        return {"name": self.name, "paper_anchor": self.anchor, "params": jsonable(self.params),
                "status": self.status, "witness": jsonable(self.witness), "millis": self.millis}


def jsonable(x):
    """Fractions become strings; containers are converted recursively."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    return x


@dataclass
class Report:
    seed: int
    checks: list = field(default_factory=list)
    version: str = REPORT_VERSION

    def sorted_checks(self) -> list:
        return sorted(self.checks, key=lambda c: c.name)

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def failed(self) -> list:
        return [c for c in self.sorted_checks() if c.status == "fail"]

    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json(self) -> dict:
        return {"version": self.version, "seed": self.seed,
                "checks": [c.to_json() for c in self.sorted_checks()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    def text(self) -> str:
        rows = self.sorted_checks()
        width = max((len(c.name) for c in rows), default=4)
        lines = [f"{'check'.ljust(width)}  status    ms"]
        for c in rows:
            lines.append(f"{c.name.ljust(width)}  {c.status.ljust(8)}  {c.millis}")
            if c.status != "pass" and c.witness is not None:
                lines.append(f"{''.ljust(width)}    witness: {json.dumps(jsonable(c.witness))}")
        n = self.counts()
        lines.append(f"{n['pass']} passed, {n['fail']} failed, {n['reported']} reported")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# running checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Task:
    """One check to run: registry key, report name and keyword parameters."""

    kind: str
    name: str
    params: tuple  # sorted (key, value) pairs so tasks stay hashable and picklable

    @classmethod
    def make(cls, kind: str, name: str, **params) -> "Task":
        return cls(kind, name, tuple(sorted(params.items())))


class InternalCheckError(RuntimeError):
    def __init__(self, name: str, cause: BaseException):
        super().__init__(f"internal error in check {name}: {type(cause).__name__}: {cause}")
        self.check_name = name
        self.cause = cause


def run_task(task: Task, ctx, registry: dict) -> CheckResult:
    fn, anchor = registry[task.kind]
    params = dict(task.params)
    start = time.perf_counter()
    try:
        status, witness = fn(ctx, **params)
    except DegreeOverflow as exc:
        status, witness = "fail", {"degree_overflow": str(exc), "bound": exc.bound}
    except Exception as exc:  # noqa: BLE001 - re-raised with the check name attached
        raise InternalCheckError(task.name, exc) from exc
    millis = int((time.perf_counter() - start) * 1000)
    return CheckResult(task.name, anchor, params, status, witness, millis)


def run_tasks(tasks: list, ctx, runner: Callable, jobs: int = 1) -> list:
    """Run ``runner(task, ctx)`` for each task, optionally in worker processes."""
    if jobs <= 1 or len(tasks) <= 1:
        return [runner(t, ctx) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(runner, t, ctx) for t in tasks]
        return [f.result() for f in futures]
