"""Command line interface: ``hrdet <subcommand> ...``.

Exit codes: 0 all verified, 2 falsified, 3 inconclusive, 64 bad usage,
65 input that the requested computation does not accept.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import artinian, verify
from .complex import (
    FIXTURE_NAMES,
    ComplexError,
    SimplicialComplex,
    f_h_vectors,
    fixture,
    orient,
    orientation_violations,
    strongly_connected,
    topology_report,
)
from .degree import (
    DegreeEngine,
    DegreeError,
    FaceMonomial,
    generic_lsop,
    is_lsop,
    numeric_lsop,
    theta_punctured,
)
from .fields import Field, FieldError, Rationals, parse_char
from .poly import term_budget
from .report import ReportWriter, draw_hilbert, draw_profile, draw_runtimes, draw_support, draw_vectors
from .suite import SUITES, Task, run_tasks, suite_json, summary_status

EXIT_OK = 0
EXIT_FALSIFIED = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64
EXIT_DATA = 65

STATUS_EXIT = {verify.VERIFIED: EXIT_OK, verify.FALSIFIED: EXIT_FALSIFIED, verify.INCONCLUSIVE: EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# shared option handling


def load_complex(spec: str) -> SimplicialComplex:
    """A built-in fixture name, or a JSON file {"n": ..., "facets": [...]}."""
    path = Path(spec)
    if path.suffix == ".json" or path.is_file():
        return SimplicialComplex.from_json(path.read_text())
    return fixture(spec)


def _parse_range(text: str) -> range:
    lo, _, hi = text.partition("-")
    return range(int(lo), int(hi or lo) + 1)


def parse_blocks(text: str) -> list[tuple[range, range]]:
    """``1-3/1-6,4/7-8``: rows 1..3 live on columns 1..6, row 4 on 7..8."""
    blocks = []
    for part in text.split(","):
        rows, _, cols = part.partition("/")
        if not cols:
            raise UsageError(f"bad block {part!r}; expected ROWS/COLS")
        blocks.append((_parse_range(rows), _parse_range(cols)))
    return blocks


def build_lsop(spec: str, c: SimplicialComplex, field: Field, seed: int):
    """generic | punctured:F | random | blocks:SPEC | file:PATH."""
    kind, _, arg = spec.partition(":")
    if kind == "generic":
        return generic_lsop(field, c.d, c.n, arg or "e1")
    if kind == "punctured":
        if not arg:
            raise UsageError("punctured needs a subset, e.g. punctured:1,2")
        return theta_punctured(c, [int(v) for v in arg.split(",")], field)
    if kind in ("random", "blocks"):
        blocks = parse_blocks(arg) if kind == "blocks" else None
        rng = random.Random(seed)
        for k in range(verify.RETRY_DRAWS):
            mu = numeric_lsop(field, verify._draw_matrix(field, c.d, c.n, rng, blocks), label=f"{spec} draw {k}")
            if is_lsop(c, mu):
                return mu
        raise DegreeError(f"no l.s.o.p. among {verify.RETRY_DRAWS} draws")
    if kind == "file":
        data = json.loads(Path(arg).read_text())
        matrix = [[field.parse(str(x)) for x in row] for row in data["matrix"]]
        aux = [field.parse(str(x)) for x in data["aux"]] if "aux" in data else None
        mu = numeric_lsop(field, matrix, aux, label=f"file:{arg}")
        if mu.d != c.d or mu.n != c.n:
            raise DegreeError(f"matrix is {mu.d} x {mu.n}, complex needs {c.d} x {c.n}")
        return mu
    raise UsageError(f"unknown --lsop {spec!r}")


def _orientation(c: SimplicialComplex, field: Field, corrupt: bool):
    char = 2 if field.characteristic == 2 else 0
    return verify.corrupted_orientation(c, char) if corrupt else orient(c, char)


def _engine(args, field: Field | None = None) -> DegreeEngine:
    field = field or parse_char(args.char)
    c = load_complex(args.fixture)
    mu = build_lsop(args.lsop, c, field, args.seed)
    return DegreeEngine(c, _orientation(c, field, args.corrupt_orientation), mu)


TEXT_LIMIT = 160


def _brief(text: str) -> str:
    """Long symbolic values are abbreviated in text mode; --json has them in full."""
    if len(text) <= TEXT_LIMIT:
        return text
    return f"{text[:TEXT_LIMIT]}... ({len(text)} chars; full value with --json)"


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print("\n".join(text_lines))


# ---------------------------------------------------------------------------
# subcommands


def cmd_fixtures(args) -> int:
    rows = []
    for name in FIXTURE_NAMES:
        c = fixture(name)
        rows.append({"name": name, "n": c.n, "d": c.d, "facets": len(c.facets)})
    _emit(args, {"fixtures": rows}, [f"{r['name']:<24} n={r['n']:<3} d={r['d']:<2} facets={r['facets']}" for r in rows])
    if args.report:
        ReportWriter(args.report).csv("fixtures.csv", rows)
    return EXIT_OK


def cmd_analyze(args) -> int:
    field = parse_char(args.char)
    c = load_complex(args.fixture)
    char = field.characteristic
    topo = topology_report(c, 2 if char == 2 else 0)
    payload: dict = {"fixture": args.fixture, "n": c.n, "d": c.d, "facets": [list(f) for f in c.facets],
                     "topology": topo.as_dict()}
    f, h = f_h_vectors(c)
    payload.update(f_vector=f, h_vector=h)
    if topo.is_pseudomanifold:
        payload["strongly_connected"] = strongly_connected(c)
        try:
            o = _orientation(c, field, args.corrupt_orientation)
            payload["orientation"] = o.as_dict()
            payload["orientation_violations"] = [list(r) for r in orientation_violations(c, o)]
        except ComplexError as exc:
            payload["orientation"] = None
            payload["orientation_error"] = str(exc)
    if topo.is_homology_manifold and topo.connected:
        payload["novik_swartz"] = artinian.novik_swartz(c, char)
    lines = [f"{args.fixture}: n={c.n} d={c.d} facets={len(c.facets)}", f"f-vector {f}", f"h-vector {h}",
             f"reduced betti {list(topo.reduced_betti)}",
             f"homology manifold {topo.is_homology_manifold}, sphere {topo.is_homology_sphere}"]
    if "orientation_violations" in payload:
        lines.append(f"orientation violations {payload['orientation_violations']}")
    _emit(args, payload, lines)
    if args.report:
        out = ReportWriter(args.report)
        out.json("analyze.json", payload)
        out.csv("vectors.csv", [{"index": i, "f": f[i] if i < len(f) else "", "h": h[i] if i < len(h) else ""}
                                for i in range(max(len(f), len(h)))])
        out.figure("vectors.png", draw_vectors({"f": f, "h": h}))
    return EXIT_OK


def cmd_degree(args) -> int:
    eng = _engine(args)
    c = eng.c
    if args.monomial:
        m = FaceMonomial.parse(c.n, args.monomial)
        value = eng.degree(m, args.method)
        label = str(m)
    else:
        value = eng.degree_poly(eng.ell_power(c.d), args.method)
        label = f"l^{c.d}"
    payload: dict = {"fixture": args.fixture, "lsop": eng.mu.label, "method": args.method,
                     "target": label, "value": artinian._text(value)}
    lines = [f"deg({label}) = {_brief(payload['value'])}"]
    profile = None
    if args.ord_profile and eng.mu.ring is not None and value:
        profile = {verify._key(k): v for k, v in artinian.bracket_profile(eng, value).items()}
        payload["ord_profile"] = profile
        lines.append("ord profile " + " ".join(f"[{k}]:{v}" for k, v in profile.items()))
    _emit(args, payload, lines)
    if args.report:
        out = ReportWriter(args.report)
        out.json("degree.json", payload)
        out.csv("degree.csv", [{"target": label, "value": payload["value"]}])
        if profile:
            facets = {verify._key(f) for f in c.facets}
            out.csv("ord_profile.csv", [{"subset": k, "ord": v, "facet": k in facets} for k, v in profile.items()])
            out.figure("ord_profile.png", draw_profile(profile, facets))
    return EXIT_OK


def cmd_gram(args) -> int:
    eng = _engine(args)
    symbolic = eng.mu.ring is not None
    report = artinian.hr_gram(eng, args.q, ord_profile=args.ord_profile and symbolic)
    payload = report.as_dict()
    payload.update(fixture=args.fixture, lsop=eng.mu.label)
    lines = [f"basis {[str(m) for m in report.basis]}"]
    lines += ["  " + " | ".join(_brief(x) for x in row) for row in payload["matrix"]]
    lines.append(f"D_{args.q} = {_brief(payload['determinant'])}")
    if report.ord_profile:
        lines.append("ord profile " + " ".join(f"[{k}]:{v}" for k, v in payload["ord_profile"].items()))
    _emit(args, payload, lines)
    if args.report:
        out = ReportWriter(args.report)
        out.json("gram.json", payload)
        labels = payload["basis"]
        out.csv("gram.csv", [{"row": labels[i], "col": labels[j], "entry": payload["matrix"][i][j]}
                             for i in range(len(labels)) for j in range(len(labels))])
        out.figure("gram_support.png", draw_support([[bool(x) for x in row] for row in report.matrix], labels))
        if report.ord_profile:
            facets = {verify._key(f) for f in eng.c.facets}
            out.figure("ord_profile.png", draw_profile(payload["ord_profile"], facets))
    return EXIT_OK


def cmd_hilbert(args) -> int:
    field = parse_char(args.char)
    c = load_complex(args.fixture)
    o = _orientation(c, field, args.corrupt_orientation)
    spec = args.lsop
    if spec == "auto":
        spec = "generic" if isinstance(field, Rationals) else "random"
    payload: dict = {"fixture": args.fixture, "field": repr(field), "lsop": spec, "seed": args.seed}
    kind, _, arg = spec.partition(":")
    if kind in ("random", "blocks"):
        blocks = parse_blocks(arg) if kind == "blocks" else None
        got = verify.hilbert_by_draws(c, o, field, args.seed, blocks)
        if got is None:
            payload["agreed"] = False
            _emit(args, payload, [f"no two of {verify.RETRY_DRAWS} draws agreed"])
            return EXIT_INCONCLUSIVE
        h, hbar, used, skipped = got
        payload.update(H=list(h), Hbar=list(hbar), draws=used, skipped=skipped)
    else:
        eng = DegreeEngine(c, o, build_lsop(spec, c, field, args.seed))
        payload.update(artinian.hilbert_report(eng, args.seed).as_dict())
        payload["lsop"] = spec
    topo = topology_report(c, 2 if field.characteristic == 2 else 0)
    if topo.is_homology_manifold and topo.connected:
        payload["novik_swartz"] = artinian.novik_swartz(c, field.characteristic)
    lines = [f"H    {payload['H']}", f"Hbar {payload['Hbar']}"]
    if payload.get("novik_swartz"):
        lines.append(f"Novik-Swartz {payload['novik_swartz']}")
    _emit(args, payload, lines)
    if args.report:
        out = ReportWriter(args.report)
        out.json("hilbert.json", payload)
        series = {"H": payload["H"], "Hbar": payload["Hbar"], "Novik-Swartz": payload.get("novik_swartz")}
        out.csv("hilbert.csv", [{"q": q, **{k: (v[q] if v else "") for k, v in series.items()}}
                                for q in range(len(payload["H"]))])
        out.figure("hilbert.png", draw_hilbert(series))
    return EXIT_OK


CHECKS_WITH_Q = {"ord_profile", "strongg", "basis_invariance", "stellar_block", "gram_symmetry"}


def _single_task(args) -> Task:
    check = args.check
    kwargs: list[tuple[str, object]] = []
    char = parse_char(args.char).characteristic
    if check in ("fixture_formulas", "formulas"):
        return Task(0, "fixture_formulas", None, (("name", args.fixture),))
    if check == "hilbert_dependence":
        return Task(0, check, None, (("seed", args.seed),))
    if check == "anisotropy_failure":
        return Task(0, check, None, (("char", char),))
    if check == "sigma_determinant":
        head, _, d = args.fixture.partition(":")
        if head != "sigma" or not d:
            raise UsageError("sigma_determinant needs --fixture sigma:D")
        return Task(0, check, None, (("d", int(d)), ("q", args.q)))
    if check in CHECKS_WITH_Q:
        kwargs.append(("q", args.q))
    if check == "stellar_block":
        if not args.facet:
            raise UsageError("stellar_block needs --facet")
        kwargs.insert(0, ("facet", tuple(int(v) for v in args.facet.split(","))))
    if check == "ord_profile" and args.method != "auto":
        kwargs.append(("method", args.method))
    if check == "novik_swartz":
        kwargs.append(("lsop", "punctured" if args.lsop.startswith("punctured") else "generic"))
    if check == "strongg" or check == "ord_profile":
        kwargs.append(("seed", args.seed))
    if not hasattr(verify, f"check_{check}"):
        raise UsageError(f"unknown check {check!r}")
    return Task(0, check, args.fixture, tuple(kwargs), corrupt=args.corrupt_orientation, char=char)


def cmd_verify(args) -> int:
    if args.suite:
        if args.suite not in SUITES:
            raise UsageError(f"unknown suite {args.suite!r}; known: {sorted(SUITES)}")
        tasks = SUITES[args.suite]
    else:
        if not args.fixture and args.check not in ("hilbert_dependence", "anisotropy_failure"):
            raise UsageError("verify needs --suite or --fixture")
        tasks = [_single_task(args)]
    results = run_tasks(tasks, args.parallel, args.max_terms)
    status = summary_status(results)
    if args.json:
        print(suite_json(results))
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark} {r.outcome.status:<12} {r.task.name} ({r.outcome.runtime:.2f}s)")
            if r.outcome.witness is not None:
                print(f"     witness: {json.dumps(r.outcome.witness, default=str, sort_keys=True)}")
        print(f"overall: {status}")
    if args.report:
        out = ReportWriter(args.report)
        out.json("verify.json", json.loads(suite_json(results)))
        out.csv("verify.csv", [{"criterion": r.task.criterion, "task": r.task.name, "status": r.outcome.status,
                                "expect": r.task.expect, "passed": r.passed,
                                "runtime": round(r.outcome.runtime, 3)} for r in results])
        out.figure("runtimes.png", draw_runtimes([r.task.name for r in results],
                                                 [r.outcome.runtime for r in results],
                                                 [r.outcome.status for r in results]),
                   size=(8, max(3, 0.18 * len(results) + 1)))
    if args.suite:
        return STATUS_EXIT[status]
    return STATUS_EXIT[results[0].outcome.status]


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixture", help="built-in fixture name or JSON file")
    common.add_argument("--char", default="0", help="0, a prime p, or 2^e")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--lsop", default=None,
                        help="generic | punctured:F | random | blocks:ROWS/COLS,... | file:PATH")
    common.add_argument("--parallel", type=int, default=1, metavar="N")
    common.add_argument("--report", metavar="DIR", help="write JSON, CSV and PNG files here")
    common.add_argument("--max-terms", type=int, default=None, help="term ceiling for symbolic products")
    common.add_argument("--corrupt-orientation", action="store_true",
                        help="flip the sign of the last facet (negative control)")

    parser = _Parser(prog="hrdet", description="Degrees and Hodge-Riemann determinants of face rings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fixtures", parents=[common], help="list built-in complexes")
    p.set_defaults(run=cmd_fixtures)

    p = sub.add_parser("analyze", parents=[common], help="topology, orientation and h-vector")
    p.set_defaults(run=cmd_analyze, needs_fixture=True)

    p = sub.add_parser("degree", parents=[common], help="deg of a monomial or of l^d")
    p.add_argument("--monomial", help="e.g. x1^2*x3; default l^d")
    p.add_argument("--method", choices=["reduce", "kx"], default="reduce")
    p.add_argument("--ord-profile", action="store_true")
    p.set_defaults(run=cmd_degree, needs_fixture=True)

    p = sub.add_parser("gram", parents=[common], help="Hodge-Riemann Gram matrix and determinant")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ord-profile", action="store_true")
    p.set_defaults(run=cmd_gram, needs_fixture=True)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert functions of H and H-bar")
    p.set_defaults(run=cmd_hilbert, needs_fixture=True, lsop_default="auto")

    p = sub.add_parser("verify", parents=[common], help="run checkers or a suite")
    p.add_argument("--suite", help="named suite, e.g. desk")
    p.add_argument("--check", default="ord_profile", help="checker name (default ord_profile)")
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--facet", help="comma-separated facet for stellar_block")
    p.add_argument("--method", choices=["auto", "symbolic", "line"], default="auto")
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    args = parser.parse_args(argv)
    if args.lsop is None:
        args.lsop = getattr(args, "lsop_default", "generic")
    if getattr(args, "needs_fixture", False) and not args.fixture:
        parser.error(f"{args.command} needs --fixture")
    try:
        with term_budget(args.max_terms):
            return args.run(args)
    except UsageError as exc:
        print(f"hrdet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ComplexError, DegreeError, FieldError, KeyError, ValueError, OSError) as exc:
        print(f"hrdet: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
