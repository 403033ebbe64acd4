"""Named batches of checks, runnable serially or in a process pool.

A task names a checker in ``hrdet.verify``, an optional fixture and keyword
arguments.  ``expect`` is the status the task must produce to pass; the
negative control expects ``falsified``.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import verify
from .complex import fixture, orient
from .poly import term_budget
from .verify import FALSIFIED, INCONCLUSIVE, VERIFIED, CheckOutcome


@dataclass(frozen=True)
class Task:
    criterion: int
    check: str
    fixture: str | None = None
    kwargs: tuple[tuple[str, object], ...] = ()
    expect: str = VERIFIED
    corrupt: bool = False
    char: int = 0
    label: str = field(default="", compare=False)

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        parts = [self.check]
        if self.fixture:
            parts.append(self.fixture)
        parts += [f"{k}={v}" for k, v in self.kwargs]
        if self.char:
            parts.append(f"char={self.char}")
        if self.corrupt:
            parts.append("corrupted")
        return " ".join(parts)


@dataclass
class TaskResult:
    task: Task
    outcome: CheckOutcome

    @property
    def passed(self) -> bool:
        return self.outcome.status == self.task.expect

    def as_dict(self) -> dict:
        return {
            "criterion": self.task.criterion,
            "task": self.task.name,
            "expect": self.task.expect,
            "passed": self.passed,
            **self.outcome.as_dict(),
        }


def run_task(task: Task, max_terms: int | None = None) -> TaskResult:
    fn = getattr(verify, f"check_{task.check}")
    kwargs = dict(task.kwargs)
    with term_budget(max_terms):
        if task.fixture is None:
            outcome = fn(**kwargs)
        else:
            c = fixture(task.fixture)
            if task.corrupt:
                o = verify.corrupted_orientation(c, task.char)
            else:
                o = orient(c, task.char)
            if task.char:
                kwargs.setdefault("char", task.char)
            outcome = fn(c, o, **kwargs)
    return TaskResult(task, outcome)


def _run_star(args: tuple[Task, int | None]) -> TaskResult:
    return run_task(*args)


def run_tasks(tasks: Sequence[Task], parallel: int = 1, max_terms: int | None = None) -> list[TaskResult]:
    """Run tasks in order; with ``parallel > 1`` in a process pool (each task
    is independent, and results come back in submission order)."""
    if parallel <= 1:
        return [run_task(t, max_terms) for t in tasks]
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        return list(pool.map(_run_star, [(t, max_terms) for t in tasks]))


def summary_status(results: Iterable[TaskResult]) -> str:
    """verified when every task met its expectation; falsified when any task
    produced an unexpected verdict; inconclusive otherwise."""
    results = list(results)
    if all(r.passed for r in results):
        return VERIFIED
    if any(not r.passed and r.outcome.status != INCONCLUSIVE for r in results):
        return FALSIFIED
    return INCONCLUSIVE


MANIFOLD_FIXTURES = (
    ("simplex_boundary:2", 0),
    ("simplex_boundary:3", 0),
    ("simplex_boundary:4", 0),
    ("sigma:2", 0),
    ("sigma:3", 0),
    ("sigma:4", 0),
    ("cycle:4", 0),
    ("cycle:5", 0),
    ("octahedron", 0),
    ("octahedron_subdivided", 0),
    ("stacked:3:1", 0),
    ("stacked:3:2", 0),
    ("rp2", 2),
)


def _desk() -> list[Task]:
    tasks: list[Task] = []
    for name in ("simplex_boundary:2", "simplex_boundary:3", "simplex_boundary:4", "sigma:2", "sigma:3", "octahedron"):
        tasks.append(Task(1, "normalization", name))
    for name in ("sigma:2", "sigma:3", "octahedron"):
        tasks.append(Task(2, "dual_route", name))
    for name in ("simplex_boundary:2", "simplex_boundary:3", "sigma:2", "sigma:3", "octahedron", "stacked:3:2"):
        tasks.append(Task(3, "ord_profile", name, (("q", 0),)))
    tasks.append(Task(3, "ord_profile", "rp2_suspension", (("q", 0),), char=2))
    for name in ("sigma:2", "simplex_boundary:4", "cycle:4"):
        tasks.append(Task(4, "middledegree", name))
    tasks.append(Task(5, "sigma_determinant", None, (("d", 3), ("q", 1))))
    tasks.append(Task(5, "ord_profile", "sigma:3", (("q", 1),)))
    tasks.append(Task(5, "ord_profile", "stacked:3:1", (("q", 1),)))
    tasks.append(Task(6, "hilbert_dependence", None, (("seed", 7),)))
    tasks.append(Task(7, "anisotropy_failure"))
    for name, char in MANIFOLD_FIXTURES:
        for lsop in ("generic", "punctured"):
            tasks.append(Task(8, "novik_swartz", name, (("lsop", lsop),), char=char))
    for name, q in (("sigma:2", 1), ("cycle:5", 1), ("simplex_boundary:3", 1)):
        tasks.append(Task(9, "basis_invariance", name, (("q", q),)))
    for name, q in (("sigma:2", 1), ("sigma:3", 1), ("simplex_boundary:3", 1), ("cycle:5", 1)):
        tasks.append(Task(9, "gram_symmetry", name, (("q", q),)))
    for name in ("sigma:2", "sigma:3", "octahedron"):
        tasks.append(Task(9, "orientation_flip", name))
    tasks.append(Task(9, "fixture_formulas", None, (("name", "locality"),)))
    for name, facet, q in (("sigma:2", (1, 3), 1), ("sigma:3", (1, 2, 4), 1), ("simplex_boundary:4", (1, 2, 3, 4), 2)):
        tasks.append(Task(9, "stellar_block", name, (("facet", facet), ("q", q))))
    tasks.append(Task(10, "ord_profile", "sigma:2", (("q", 0),), expect=FALSIFIED, corrupt=True))
    return tasks


SUITES: dict[str, list[Task]] = {"desk": _desk()}


def suite_json(results: Sequence[TaskResult]) -> str:
    """Canonical JSON for a suite run; runtimes are left out so reruns
    produce identical text."""
    payload = {
        "schema": 1,
        "status": summary_status(results),
        "results": [{k: v for k, v in r.as_dict().items() if k != "runtime"} for r in results],
    }
    return json.dumps(payload, indent=2, sort_keys=True, default=str)
