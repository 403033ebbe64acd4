"""The ten acceptance criteria, each within its time budget.

Every criterion runs the matching tasks of the ``desk`` suite (the same
tasks ``hrdet verify --suite desk`` runs) and, where the criterion names
concrete numbers, asserts them directly.  One PASS/FAIL line per criterion
is printed in the terminal summary and to stdout.
"""

import time

import pytest
from conftest import ACCEPTANCE_LINES

from hrdet.cli import EXIT_FALSIFIED, main
from hrdet.suite import SUITES, TaskResult, run_tasks
from hrdet.verify import FALSIFIED, RP2_SUSPENSION_RANDOM, RP2_SUSPENSION_SPLIT

BUDGETS = {1: 5, 2: 60, 3: 300, 4: 600, 5: 600, 6: 120, 7: 1, 8: 120, 9: 300, 10: 60}
TITLES = {
    1: "degree normalization",
    2: "dual-route equality",
    3: "ord profile of deg(l^d)",
    4: "middle-degree determinant",
    5: "D_1 spot checks",
    6: "Hilbert functions over GF(2^10)",
    7: "isotropic x_3 for a punctured system",
    8: "Novik-Swartz consistency",
    9: "property suite",
    10: "negative control",
}


def run_criterion(k: int) -> tuple[list[TaskResult], float]:
    tasks = [t for t in SUITES["desk"] if t.criterion == k]
    assert tasks, f"no desk tasks for criterion {k}"
    start = time.perf_counter()
    results = run_tasks(tasks)
    return results, time.perf_counter() - start


def report(k: int, ok: bool, elapsed: float, detail: str = "") -> None:
    mark = "PASS" if ok else "FAIL"
    line = f"criterion {k:>2} {mark} {TITLES[k]} ({elapsed:.1f}s / budget {BUDGETS[k]}s){' ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def check(k: int, extra=None) -> None:
    results, elapsed = run_criterion(k)
    failed = [f"{r.task.name}: {r.outcome.status}" for r in results if not r.passed]
    problems = list(failed)
    if extra is not None and not failed:
        problems += extra(results)
    if elapsed > BUDGETS[k]:
        problems.append(f"over budget: {elapsed:.1f}s > {BUDGETS[k]}s")
    report(k, not problems, elapsed, "; ".join(problems))
    assert not problems, problems


def _by_check(results, name):
    return [r for r in results if r.task.check == name]


def test_criterion_1_normalization():
    check(1)


def test_criterion_2_dual_route():
    check(2)


def test_criterion_3_top_degree_profile():
    def profiles(results):
        out = []
        for r in results:
            prof = r.outcome.evidence["profile"]
            if set(prof.values()) - {-1, 0} or -1 not in prof.values():
                out.append(f"{r.task.name}: unexpected values")
        return out

    check(3, profiles)


def test_criterion_4_middle_degree():
    def lambdas(results):
        return [f"{r.task.name}: no lambda" for r in results if r.outcome.evidence.get("lambda") is None]

    check(4, lambdas)


def test_criterion_5_sigma_and_stacked():
    check(5)


def test_criterion_6_hilbert_functions():
    def dims(results):
        ev = results[0].outcome.evidence
        out = []
        for tag, want in (("random", RP2_SUSPENSION_RANDOM), ("split", RP2_SUSPENSION_SPLIT)):
            got = (tuple(ev[tag]["h"]), tuple(ev[tag]["hbar"]))
            if got != want:
                out.append(f"{tag}: {got}")
            if ev[tag]["draws"] > 8:
                out.append(f"{tag}: {ev[tag]['draws']} draws")
        return out

    check(6, dims)


def test_criterion_7_isotropic_element():
    def witness(results):
        ev = results[0].outcome.evidence
        return [] if ev["element"] == "x3" and ev["pairing_witness"] else ["no pairing witness"]

    check(7, witness)


def test_criterion_8_novik_swartz():
    def both_systems(results):
        covered = {(r.task.fixture, dict(r.task.kwargs)["lsop"]) for r in results}
        names = {r.task.fixture for r in results}
        return [f"{n}: missing a system" for n in names if len({l for f, l in covered if f == n}) != 2]

    check(8, both_systems)


def test_criterion_9_property_suite():
    def coverage(results):
        needed = {"basis_invariance", "gram_symmetry", "fixture_formulas", "orientation_flip", "stellar_block"}
        missing = needed - {r.task.check for r in results}
        out = [f"missing {m}" for m in sorted(missing)]
        for r in _by_check(results, "basis_invariance"):
            if len(r.outcome.evidence["trials"]) != 5:
                out.append(f"{r.task.name}: {len(r.outcome.evidence['trials'])} trials")
        for r in _by_check(results, "stellar_block"):
            if r.outcome.evidence["new_entry_ord"] != 2 * dict(r.task.kwargs)["q"] - 1:
                out.append(f"{r.task.name}: wrong ord")
        return out

    check(9, coverage)


def test_criterion_10_negative_control(capsys):
    start = time.perf_counter()
    results, _ = run_criterion(10)
    problems = [f"{r.task.name}: {r.outcome.status}" for r in results if r.outcome.status != FALSIFIED]
    problems += [f"{r.task.name}: no witness subset" for r in results
                 if not (r.outcome.witness and r.outcome.witness.get("subset"))]
    code = main(["verify", "--fixture", "sigma:2", "--corrupt-orientation"])
    out = capsys.readouterr().out
    if code != EXIT_FALSIFIED:
        problems.append(f"exit code {code}")
    if "witness" not in out:
        problems.append("witness not printed")
    elapsed = time.perf_counter() - start
    if elapsed > BUDGETS[10]:
        problems.append("over budget")
    report(10, not problems, elapsed, "; ".join(problems))
    assert not problems, problems


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
