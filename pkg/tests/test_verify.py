from pathlib import Path

import pytest

from hrdet import verify
from hrdet.complex import fixture, orient, stellar_subdivide
from hrdet.degree import DegreeEngine, DegreeError, theta_punctured
from hrdet.fields import QQ
from hrdet.poly import term_budget
from hrdet.suite import SUITES, Task, run_tasks, suite_json, summary_status
from hrdet.verify import FALSIFIED, INCONCLUSIVE, VERIFIED

REALIZED = Path(__file__).parent / "golden" / "realized.txt"


def fx(name, char=0):
    c = fixture(name)
    return c, orient(c, char)


@pytest.mark.parametrize("name", ["s0", "simplex_boundary:2", "sigma:2", "cycle:5"])
def test_normalization_and_dual_route(name):
    c, o = fx(name)
    assert verify.check_normalization(c, o).status == VERIFIED
    assert verify.check_dual_route(c, o).status == VERIFIED


@pytest.mark.parametrize("name", ["simplex_boundary:2", "sigma:2", "simplex_boundary:3"])
def test_ord_profile_of_top_degree(name):
    c, o = fx(name)
    out = verify.check_ord_profile(c, o, 0)
    assert out.status == VERIFIED
    facets = {",".join(map(str, f)) for f in c.facets}
    assert all(v == (-1 if k in facets else 0) for k, v in out.evidence["profile"].items())


@pytest.mark.parametrize("name", ["sigma:2", "simplex_boundary:3"])
def test_line_method_matches_symbolic(name):
    c, o = fx(name)
    sym = verify.check_ord_profile(c, o, 0, method="symbolic")
    line = verify.check_ord_profile(c, o, 0, method="line")
    assert sym.status == line.status == VERIFIED
    assert sym.evidence["profile"] == line.evidence["profile"]


@pytest.mark.parametrize(
    "check, kwargs",
    [("ord_profile", {"q": 0}), ("ord_profile", {"q": 1}), ("middledegree", {})],
)
def test_corrupted_orientation_is_falsified_with_a_ridge(check, kwargs):
    c = fixture("sigma:2")
    bad = verify.corrupted_orientation(c)
    out = getattr(verify, f"check_{check}")(c, bad, **kwargs)
    assert out.status == FALSIFIED
    ridge = tuple(out.witness["subset"])
    assert len(ridge) == c.d - 1 and ridge in c.ridge_map


def test_corrupted_orientation_breaks_the_dual_route():
    c = fixture("sigma:2")
    out = verify.check_dual_route(c, verify.corrupted_orientation(c))
    assert out.status == FALSIFIED and "monomial" in out.witness


def test_middledegree_rejects_odd_dimension():
    c, o = fx("octahedron")
    with pytest.raises(DegreeError):
        verify.check_middledegree(c, o)


def test_realized_square_classes_are_stable():
    for line in REALIZED.read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        kind, name, *rest = line.split()
        c, o = fx(name)
        if kind == "lambda":
            out = verify.check_middledegree(c, o)
            assert out.status == VERIFIED and out.evidence["lambda"] == rest[0], name
        else:
            got = [f"{','.join(map(str, f))}:{o[f]:+d}" for f in c.facets]
            assert got == rest, name


def test_term_budget_makes_checks_inconclusive():
    c, o = fx("sigma:3")
    with term_budget(200):
        out = verify.check_ord_profile(c, o, 1)
    assert out.status == INCONCLUSIVE and "reason" in out.evidence


def test_strongg_cases():
    c, o = fx("simplex_boundary:3")
    assert verify.check_strongg(c, o, 1).evidence["vacuous"]
    c, o = fx("sigma:2")
    assert verify.check_strongg(c, o, 1).evidence["vacuous"]
    out = verify.check_strongg(c, o, 0)
    assert out.status == VERIFIED and not out.evidence["vacuous"]


@pytest.mark.parametrize("name", ["sigma:2", "sigma:3", "cycle:5"])
def test_punctured_top_degree_is_nonzero_at_every_nonface(name):
    c, o = fx(name)
    for f in verify.size_d_nonfaces(c):
        eng = DegreeEngine(c, o, theta_punctured(c, f, QQ))
        assert verify.ell_degree(eng), f


def test_status_transfers_to_a_stellar_subdivision():
    c, o = fx("sigma:2")
    sub = stellar_subdivide(c, c.facets[0])
    o2 = verify.subdivided_orientation(c, o, sub)
    for q in (0, 1):
        a = verify.check_ord_profile(c, o, q)
        b = verify.check_ord_profile(sub, o2, q)
        assert a.status == b.status == VERIFIED


def test_subdivided_orientation_agrees_on_shared_facets():
    c, o = fx("sigma:3")
    sub = stellar_subdivide(c, c.facets[2])
    o2 = verify.subdivided_orientation(c, o, sub)
    assert all(o2[f] == o[f] for f in sub.facets if c.is_facet(f))


def test_property_checks_on_small_fixtures():
    c, o = fx("sigma:2")
    assert verify.check_basis_invariance(c, o, 1, trials=2).status == VERIFIED
    assert verify.check_orientation_flip(c, o).status == VERIFIED
    assert verify.check_gram_symmetry(c, o, 1).status == VERIFIED
    out = verify.check_stellar_block(c, o, (1, 3), 1)
    assert out.status == VERIFIED and out.evidence["new_entry_ord"] == 1


@pytest.mark.parametrize("name", ["s0", "simplex_boundary:2", "simplex_boundary:3", "sigma:2", "locality"])
def test_fixture_formulas(name):
    assert verify.check_fixture_formulas(name).status == VERIFIED


def test_fixture_formulas_reject_unknown_names():
    with pytest.raises(KeyError):
        verify.check_fixture_formulas("klein")


def test_sigma_determinant_in_dimension_two():
    assert verify.check_sigma_determinant(2, 1).status == VERIFIED


def test_anisotropy_failure():
    out = verify.check_anisotropy_failure()
    assert out.status == VERIFIED
    assert out.evidence["nonzero"] and out.evidence["square_zero"]


@pytest.mark.parametrize("lsop", ["generic", "punctured"])
def test_novik_swartz_on_small_manifolds(lsop):
    for name, char in [("sigma:2", 0), ("cycle:5", 0), ("rp2", 2)]:
        c, o = fx(name, char)
        assert verify.check_novik_swartz(c, o, char=char, lsop=lsop).status == VERIFIED, name


def test_suite_json_is_deterministic():
    tasks = [
        Task(1, "normalization", "sigma:2"),
        Task(3, "ord_profile", "sigma:2", (("q", 0),)),
        Task(10, "ord_profile", "sigma:2", (("q", 0),), expect=FALSIFIED, corrupt=True),
    ]
    first, second = run_tasks(tasks), run_tasks(tasks)
    assert suite_json(first) == suite_json(second)
    assert summary_status(first) == VERIFIED
    assert all(r.passed for r in first)


def test_parallel_run_preserves_order():
    tasks = [Task(1, "normalization", n) for n in ("sigma:2", "cycle:5", "s0")]
    results = run_tasks(tasks, parallel=2)
    assert [r.task for r in results] == tasks
    assert suite_json(results) == suite_json(run_tasks(tasks))


def test_summary_status_rules():
    ok = run_tasks([Task(1, "normalization", "s0")])
    unexpected = run_tasks([Task(1, "normalization", "s0", expect=FALSIFIED)])
    assert summary_status(ok) == VERIFIED
    assert summary_status(ok + unexpected) == FALSIFIED
    capped = run_tasks([Task(5, "ord_profile", "sigma:3", (("q", 1),))], max_terms=200)
    assert summary_status(ok + capped) == INCONCLUSIVE


def test_desk_suite_covers_every_criterion():
    assert {t.criterion for t in SUITES["desk"]} == set(range(1, 11))
    assert any(t.corrupt and t.expect == FALSIFIED for t in SUITES["desk"])
