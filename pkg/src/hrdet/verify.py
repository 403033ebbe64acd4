"""Checkers for the valuation statements and closed-form fixtures.

Every checker returns a ``CheckOutcome`` with status ``verified``,
``falsified`` (with a concrete witness) or ``inconclusive``.

Orders of vanishing are computed one of two ways:

* ``symbolic``: the exact rational function and trial division by brackets;
* ``line``: the quantity restricted to a random line through a random point
  of V([G]) and expanded as a Laurent series in the line parameter t.  The
  t-adic order U bounds ord_[G] from above.  The Karu-Xiao sum bounds it
  from below (L = -1 at facets, 0 elsewhere), so U = L pins it exactly.
"""

from __future__ import annotations

import itertools
import random
import time
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field as dc_field

from .artinian import (
    GradedBasis,
    RankUnresolved,
    anisotropy_witness_check,
    bracket_profile,
    hilbert_report,
    hr_gram,
    lefschetz_check,
    novik_swartz,
    primitive_determinants,
    select_basis,
)
from .complex import (
    Orientation,
    SimplicialComplex,
    fixture,
    orient,
)
from .degree import (
    DegreeEngine,
    DegreeError,
    ExtendedResidue,
    FaceMonomial,
    face_monomials,
    generic_lsop,
    is_lsop,
    line_lsop,
    numeric_lsop,
    theta_punctured,
)
from .fields import QQ, BinaryField, Field, PrimeField, sampling_field
from .poly import TermBudgetExceeded, active_term_budget, term_budget
from .ratfunc import Bracket, RatFunc, is_square_mod_scalars
from .series import PrecisionLost

VERIFIED = "verified"
FALSIFIED = "falsified"
INCONCLUSIVE = "inconclusive"

LINE_TRIES = 4
LINE_PRECISION = 10
DEFAULT_TERM_BUDGET = 1_000_000


@dataclass
class CheckOutcome:
    claim: str
    status: str
    evidence: dict = dc_field(default_factory=dict)
    witness: dict | None = None
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "status": self.status,
            "evidence": self.evidence,
            "witness": self.witness,
            "runtime": round(self.runtime, 3),
        }


def _key(cols) -> str:
    return ",".join(map(str, cols))


def _timed(fn: Callable[..., CheckOutcome]) -> Callable[..., CheckOutcome]:
    """Record runtime and turn an exhausted term budget or unresolved rank
    bounds into INCONCLUSIVE.

    A default budget applies unless the caller has set one."""

    def wrapper(*args, **kwargs) -> CheckOutcome:
        start = time.perf_counter()
        limit = active_term_budget()
        try:
            with term_budget(DEFAULT_TERM_BUDGET if limit is None else limit):
                outcome = fn(*args, **kwargs)
        except (TermBudgetExceeded, RankUnresolved) as exc:
            outcome = CheckOutcome(fn.__name__, INCONCLUSIVE, {"reason": str(exc)})
        outcome.runtime = time.perf_counter() - start
        return outcome

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def field_for(char: int) -> Field:
    return QQ if char == 0 else PrimeField(char)


def generic_engine(c: SimplicialComplex, o: Orientation, field: Field, aux: str = "e1") -> DegreeEngine:
    return DegreeEngine(c, o, generic_lsop(field, c.d, c.n, aux))


def ell_degree(eng: DegreeEngine, method: str = "reduce"):
    """deg(l^d) for l = x_1 + ... + x_n."""
    return eng.degree_poly(eng.ell_power(eng.d), method)


# ---------------------------------------------------------------------------
# orders of vanishing along a line


@dataclass(frozen=True)
class LineOrder:
    upper: int
    lower: int

    @property
    def exact(self) -> bool:
        return self.upper == self.lower


def line_order(eng: DegreeEngine, cols: tuple[int, ...], target: Callable[[DegreeEngine], object],
               rng: random.Random, precision: int = LINE_PRECISION) -> LineOrder | None:
    """Bounds on ord_[cols] of ``target`` evaluated on the generic system.

    ``target`` must only divide by facet brackets (true of anything built
    from the degree map by ring operations).  Returns None when no usable
    line was found."""
    mu = eng.mu
    ring = mu.ring
    sf = sampling_field(ring.field)
    bracket = Bracket(ring, cols)
    facets = eng.c.facets
    lower = -1 if eng.c.is_facet(cols) else 0
    for _ in range(LINE_TRIES):
        point = bracket.factor.point(rng, sf)
        direction = [sf.random(rng) for _ in range(ring.nvars)]
        line = line_lsop(mu, point, direction, sf, precision)
        dom = line.domain
        if dom.valuation(line.bracket(cols)) != 1:
            continue
        if any(f != cols and dom.valuation(line.bracket(f)) != 0 for f in facets):
            continue
        try:
            value = target(DegreeEngine(eng.c, eng.o, line, check=False))
        except PrecisionLost:
            precision *= 2
            continue
        upper = dom.valuation(value)
        if upper is None:
            precision *= 2
            continue
        return LineOrder(upper, lower)
    return None


# ---------------------------------------------------------------------------
# the degree map itself


@_timed
def check_normalization(c: SimplicialComplex, o: Orientation, *, char: int = 0) -> CheckOutcome:
    """deg(x_F) = eps_F / [F] for every facet, by both degree routes."""
    eng = generic_engine(c, o, field_for(char))
    ring = eng.mu.ring
    evidence: dict = {"facets": len(c.facets)}
    for f in c.facets:
        want = Bracket(ring, f).ratfunc().inverse()
        if eng.epsilon(f) < 0:
            want = -want
        m = FaceMonomial.from_vertices(c.n, f)
        for method in ("reduce", "kx"):
            if eng.degree(m, method) != want:
                return CheckOutcome("normalization", FALSIFIED, evidence, {"subset": list(f), "method": method})
    return CheckOutcome("normalization", VERIFIED, evidence)


@_timed
def check_dual_route(c: SimplicialComplex, o: Orientation, *, char: int = 0, aux: str = "extended") -> CheckOutcome:
    """The Karu-Xiao sum equals the support-growing reduction on every
    degree-d face monomial."""
    eng = generic_engine(c, o, field_for(char), aux)
    monomials = face_monomials(c, c.d)
    evidence: dict = {"aux": aux, "monomials": len(monomials)}
    for m in monomials:
        try:
            same = eng.degree_kx(m) == eng.degree_reduce(m)
        except ExtendedResidue as exc:
            return CheckOutcome("dual_route", FALSIFIED, evidence, {"monomial": str(m), "reason": str(exc)})
        if not same:
            return CheckOutcome("dual_route", FALSIFIED, evidence, {"monomial": str(m)})
    return CheckOutcome("dual_route", VERIFIED, evidence)


@_timed
def check_orientation_flip(c: SimplicialComplex, o: Orientation) -> CheckOutcome:
    """Reversing the orientation negates deg on every degree-d face monomial
    (characteristic 0)."""
    e1 = generic_engine(c, o, QQ)
    e2 = generic_engine(c, o.flipped(), QQ)
    monomials = face_monomials(c, c.d)
    for m in monomials:
        if e2.degree_reduce(m) != -e1.degree_reduce(m):
            return CheckOutcome("orientation_flip", FALSIFIED, {"monomials": len(monomials)}, {"monomial": str(m)})
    return CheckOutcome("orientation_flip", VERIFIED, {"monomials": len(monomials)})


@_timed
def check_basis_invariance(c: SimplicialComplex, o: Orientation, q: int, *, trials: int = 5,
                           seed: int = 0) -> CheckOutcome:
    """D_q from two randomly ordered verified bases differ by a nonzero
    scalar times a square."""
    eng = generic_engine(c, o, QQ)
    evidence: dict = {"q": q, "trials": []}
    for t in range(trials):
        b1 = select_basis(eng, q, seed=2 * (seed + t), shuffle=True)
        b2 = select_basis(eng, q, seed=2 * (seed + t) + 1, shuffle=True)
        d1 = hr_gram(eng, q, b1).determinant
        d2 = hr_gram(eng, q, b2).determinant
        result = is_square_mod_scalars(d1 / d2)
        row = {"bases": [[str(m) for m in b1.monomials], [str(m) for m in b2.monomials]],
               "square": result.is_square}
        evidence["trials"].append(row)
        if not result.is_square:
            return CheckOutcome("basis_invariance", FALSIFIED, evidence, row)
    return CheckOutcome("basis_invariance", VERIFIED, evidence)


@_timed
def check_gram_symmetry(c: SimplicialComplex, o: Orientation, q: int) -> CheckOutcome:
    """Every entry deg(l^(d-2q) y_i y_j) recomputed in both orders by the
    Karu-Xiao route matches the symmetric Gram matrix built by reduction."""
    eng = generic_engine(c, o, QQ)
    kx = generic_engine(c, o, QQ, "extended")
    report = hr_gram(eng, q)
    ys = report.basis
    k = c.d - 2 * q
    evidence: dict = {"q": q, "basis": [str(m) for m in ys]}
    for i, yi in enumerate(ys):
        for j, yj in enumerate(ys):
            if kx.degree_ell_times(k, yi * yj, "kx") != report.matrix[i][j]:
                return CheckOutcome("gram_symmetry", FALSIFIED, evidence, {"entry": [i, j]})
    return CheckOutcome("gram_symmetry", VERIFIED, evidence)


# ---------------------------------------------------------------------------
# orientation consistency


def inconsistent_ridges(eng: DegreeEngine) -> list[tuple]:
    """Ridges R where deg(x_R * x_min(R)) computed by the Karu-Xiao sum keeps a
    pole along the auxiliary bracket of R: the induced signs of the two facets
    through R fail to cancel.  Empty for d < 2, where no monomial straddles
    two facets."""
    if eng.d < 2:
        return []
    bad = []
    for ridge in sorted(eng.c.ridge_map):
        m = FaceMonomial.from_vertices(eng.c.n, ridge + (ridge[0],))
        try:
            eng.degree_kx(m)
        except ExtendedResidue:
            bad.append(ridge)
    return bad


def _orientation_failure(claim: str, eng: DegreeEngine, evidence: dict) -> CheckOutcome | None:
    bad = inconsistent_ridges(eng)
    evidence["inconsistent_ridges"] = [list(r) for r in bad]
    if not bad:
        return None
    return CheckOutcome(claim, FALSIFIED, evidence, {
        "subset": list(bad[0]),
        "reason": "Karu-Xiao residue does not cancel across this ridge: the degree functional is ill-defined",
    })


# ---------------------------------------------------------------------------
# ord profiles


def _compare_profile(claim: str, profile: Mapping[tuple, int], c: SimplicialComplex,
                     expected: Mapping[str, int], mod2: bool, evidence: dict) -> CheckOutcome:
    evidence["profile"] = {_key(k): v for k, v in sorted(profile.items())}
    for cols, value in sorted(profile.items()):
        want = expected["facet"] if c.is_facet(cols) else expected["nonfacet"]
        got = value % 2 if mod2 else value
        if got != (want % 2 if mod2 else want):
            return CheckOutcome(claim, FALSIFIED, evidence,
                                {"subset": list(cols), "ord": value, "expected": want})
    return CheckOutcome(claim, VERIFIED, evidence)


@_timed
def check_ord_profile(c: SimplicialComplex, o: Orientation, q: int, expected: Mapping[str, int] | None = None,
                      *, char: int = 0, mode: str = "auto", method: str = "auto", seed: int = 0,
                      lsop_aux: str = "e1") -> CheckOutcome:
    """Compare ord_[F] of a target with an expected facet/non-facet pattern.

    ``q == 0`` targets deg(l^d) and compares exactly (expected -1 / 0 by
    default).  ``q > 0`` targets the Hodge-Riemann determinant D_q and
    compares mod 2 (expected 1 / 0 by default)."""
    field = field_for(char)
    eng = generic_engine(c, o, field, lsop_aux)
    mod2 = q > 0
    if expected is None:
        expected = {"facet": 1, "nonfacet": 0} if mod2 else {"facet": -1, "nonfacet": 0}
    claim = f"ord_profile(q={q})"
    evidence: dict = {"char": char, "q": q, "expected": dict(expected), "mod2": mod2}
    if method == "auto":
        method = "symbolic" if (q > 0 or c.n <= 5) else "line"
    evidence["method"] = method
    failure = _orientation_failure(claim, eng, evidence)
    if failure is not None:
        return failure
    if q > 0:
        if method != "symbolic":
            raise DegreeError("ord profiles of D_q are computed symbolically")
        report = hr_gram(eng, q)
        if not report.determinant:
            return CheckOutcome(claim, FALSIFIED, evidence, {"reason": "D_q = 0 (Lefschetz failure)", "q": q})
        evidence["basis"] = [str(m) for m in report.basis]
        return _compare_profile(claim, bracket_profile(eng, report.determinant), c, expected, mod2, evidence)
    if method == "symbolic":
        value = ell_degree(eng)
        if not value:
            return CheckOutcome(claim, FALSIFIED, evidence, {"reason": "deg(l^d) = 0"})
        return _compare_profile(claim, bracket_profile(eng, value), c, expected, mod2, evidence)
    rng = random.Random(seed)
    profile = {}
    unresolved = []
    for cols in itertools.combinations(range(1, c.n + 1), c.d):
        bounds = line_order(eng, cols, ell_degree, rng)
        if bounds is None or not bounds.exact:
            unresolved.append({"subset": list(cols), "bounds": None if bounds is None else [bounds.lower, bounds.upper]})
            continue
        profile[cols] = bounds.upper
    outcome = _compare_profile(claim, profile, c, expected, False, evidence)
    if outcome.status == VERIFIED and unresolved:
        evidence["unresolved"] = unresolved
        return CheckOutcome(claim, INCONCLUSIVE, evidence)
    return outcome


# ---------------------------------------------------------------------------
# middle degree


@_timed
def check_middledegree(c: SimplicialComplex, o: Orientation, *, char: int = 0) -> CheckOutcome:
    """D_(d/2) / prod_facets [F] is a scalar times a square; reports the
    scalar's square class and the mod-2 ord profile of D_(d/2)."""
    if c.d % 2:
        raise DegreeError(f"middle degree needs d even, got d={c.d}")
    field = field_for(char)
    eng = generic_engine(c, o, field)
    q = c.d // 2
    claim = "middledegree"
    evidence: dict = {"char": char, "q": q}
    failure = _orientation_failure(claim, eng, evidence)
    if failure is not None:
        return failure
    report = hr_gram(eng, q)
    evidence["basis"] = [str(m) for m in report.basis]
    if not report.determinant:
        return CheckOutcome(claim, FALSIFIED, evidence, {"reason": "D_q = 0"})
    profile = bracket_profile(eng, report.determinant)
    parity = _compare_profile(claim, profile, c, {"facet": 1, "nonfacet": 0}, True, evidence)
    if parity.status != VERIFIED:
        return parity
    product = RatFunc.one(eng.mu.ring)
    for f in c.facets:
        product = product * Bracket(eng.mu.ring, f).ratfunc()
    result = is_square_mod_scalars(report.determinant / product)
    evidence["lambda"] = None if result.scalar is None else field.format(result.scalar)
    evidence["lambda_note"] = "implementation-realized; the scalar is not pinned"
    if not result.is_square:
        return CheckOutcome(claim, FALSIFIED, evidence, {"reason": "D/prod[F] is not a scalar times a square"})
    return CheckOutcome(claim, VERIFIED, evidence)


# ---------------------------------------------------------------------------
# strong Lefschetz for punctured systems


def size_d_nonfaces(c: SimplicialComplex) -> list[tuple[int, ...]]:
    return [f for f in itertools.combinations(range(1, c.n + 1), c.d) if not c.is_face(f)]


@_timed
def check_strongg(c: SimplicialComplex, o: Orientation, q: int, *, char: int = 0, seed: int = 0,
                  subdivisions: bool = False) -> CheckOutcome:
    """Strong Lefschetz in degree q for every punctured reduction H_F."""
    claim = f"strongg(q={q})"
    field = field_for(char)
    evidence: dict = {"char": char, "q": q}
    if 2 * q > c.d:
        raise DegreeError("q must satisfy 2q <= d")
    nonfaces = size_d_nonfaces(c)
    evidence["nonfaces"] = [_key(f) for f in nonfaces]
    if not nonfaces or 2 * q == c.d:
        evidence["vacuous"] = True
        return CheckOutcome(claim, VERIFIED, evidence)
    evidence["vacuous"] = False
    for f in nonfaces:
        eng = DegreeEngine(c, o, theta_punctured(c, f, field))
        if not lefschetz_check(eng, q, seed):
            return CheckOutcome(claim, FALSIFIED, evidence, {"subset": list(f), "q": q})
    if subdivisions:
        from .complex import stellar_subdivide

        for facet in c.facets:
            sub = stellar_subdivide(c, facet)
            inner = check_strongg(sub, orient(sub, char), q, char=char, seed=seed)
            if inner.status != VERIFIED:
                inner.evidence["subdivided_facet"] = _key(facet)
                return inner
        evidence["subdivisions_checked"] = len(c.facets)
    return CheckOutcome(claim, VERIFIED, evidence)


# ---------------------------------------------------------------------------
# closed forms


def _brackets_without(eng: DegreeEngine, base: tuple[int, ...], drop: int, add: int | None = None) -> RatFunc:
    cols = [v for v in base if v != drop]
    if add is not None:
        cols.append(add)
    return Bracket(eng.mu.ring, sorted(cols)).ratfunc()


def _up_to_sign(value: RatFunc, formula: RatFunc) -> int | None:
    """The sign s with value = s * formula, or None."""
    if value == formula:
        return 1
    if value == -formula:
        return -1
    return None


ELL_POWER_LIMIT = 3


def simplex_boundary_formulas(d: int, ell_limit: int = ELL_POWER_LIMIT) -> CheckOutcome:
    """Closed forms on the boundary of the d-simplex: deg(x_1^d) and
    deg(l^(d-2q) x_1^(2q)) up to one common sign, plus the linear relations
    [V-p] x_m = (-1)^|p-m| [V-m] x_p in degree 1.

    Degrees with l^k for k > ``ell_limit`` are skipped (deg(l^4) on the
    boundary of the 4-simplex already has over two million terms)."""
    c = fixture(f"simplex_boundary:{d}")
    o = orient(c)
    eng = generic_engine(c, o, QQ)
    verts = tuple(range(1, d + 2))
    ring = eng.mu.ring
    opp = {m: _brackets_without(eng, verts, m) for m in verts}
    denom = RatFunc.one(ring)
    for m in verts:
        denom = denom * opp[m]
    a_sum = RatFunc.sum([opp[m] if (m - 1) % 2 == 0 else -opp[m] for m in verts], ring)
    evidence: dict = {}
    signs = set()
    top = eng.degree_reduce(FaceMonomial.from_vertices(c.n, [1] * d))
    s = _up_to_sign(top, opp[1] ** d / denom)
    evidence["deg(x1^d)"] = s
    signs.add(s)
    skipped = []
    for q in range(d // 2 + 1):
        if d - 2 * q > ell_limit:
            skipped.append(q)
            continue
        value = eng.degree_ell_times(d - 2 * q, FaceMonomial.from_vertices(c.n, [1] * (2 * q)))
        formula = a_sum ** (d - 2 * q) * opp[1] ** (2 * q) / denom
        s = _up_to_sign(value, formula)
        evidence[f"deg(l^{d - 2 * q} x1^{2 * q})"] = s
        signs.add(s)
    relation_ok = True
    partners = [m for m in _degree_monomials(c, d - 1)]
    for p, m in itertools.permutations(verts, 2):
        sign = -1 if abs(p - m) % 2 else 1
        xm = FaceMonomial.from_vertices(c.n, [m])
        xp = FaceMonomial.from_vertices(c.n, [p])
        for z in partners:
            lhs = opp[p] * _deg_or_zero(eng, xm * z)
            rhs = opp[m] * _deg_or_zero(eng, xp * z)
            if lhs != (rhs if sign > 0 else -rhs):
                relation_ok = False
    evidence["degree_one_relations"] = relation_ok
    evidence["skipped_q"] = skipped
    evidence["epsilon"] = sorted(x for x in signs if x is not None)
    ok = None not in signs and len(signs) == 1 and relation_ok
    return CheckOutcome(f"formulas:simplex_boundary:{d}", VERIFIED if ok else FALSIFIED, evidence,
                        None if ok else {"signs": [str(x) for x in signs], "relations": relation_ok})


def _degree_monomials(c: SimplicialComplex, q: int) -> list[FaceMonomial]:
    from .degree import face_monomials

    return face_monomials(c, q)


def _deg_or_zero(eng: DegreeEngine, m: FaceMonomial):
    if not eng.c.is_face(m.support):
        return eng.dom.zero
    return eng.degree_reduce(m)


def sigma_a(eng: DegreeEngine, v: int) -> RatFunc:
    """A_v with [F] l = A_(d+1) x_(d+1) + A_(d+2) x_(d+2) on the suspension,
    F = {1..d}."""
    d = eng.d
    base = tuple(range(1, d + 1))
    terms = [Bracket(eng.mu.ring, base).ratfunc()]
    for m in base:
        t = _brackets_without(eng, base, m, v)
        terms.append(t if (d + 1 + m) % 2 == 0 else -t)
    return RatFunc.sum(terms, eng.mu.ring)


@_timed
def check_sigma_determinant(d: int, q: int) -> CheckOutcome:
    """On the suspension Sigma, D_q on the basis x_(d+1)^q, x_(d+2)^q agrees up
    to squares with -prod[G] (d even) or -A_(d+1) A_(d+2) prod[G] (d odd)."""
    c = fixture(f"sigma:{d}")
    eng = generic_engine(c, orient(c), QQ)
    ring = eng.mu.ring
    ys = [FaceMonomial.from_dict(c.n, {v: q}) for v in (d + 1, d + 2)]
    report = hr_gram(eng, q, GradedBasis(q, ys, [], None, False))
    pattern = -RatFunc.one(ring)
    for f in c.facets:
        pattern = pattern * Bracket(ring, f).ratfunc()
    if d % 2:
        pattern = pattern * sigma_a(eng, d + 1) * sigma_a(eng, d + 2)
    evidence: dict = {"d": d, "q": q, "basis": [str(y) for y in ys],
                      "off_diagonal_zero": not report.matrix[0][1]}
    if not report.determinant:
        return CheckOutcome(f"sigma_determinant:{d}:{q}", FALSIFIED, evidence, {"reason": "D_q = 0"})
    result = is_square_mod_scalars(report.determinant / pattern)
    scalar_trivial = result.is_square and result.scalar == 1
    evidence["ratio_square"] = result.is_square
    evidence["ratio_square_class"] = result.scalar
    ok = evidence["off_diagonal_zero"] and scalar_trivial
    return CheckOutcome(f"sigma_determinant:{d}:{q}", VERIFIED if ok else FALSIFIED, evidence,
                        None if ok else dict(evidence))


def suspension_formulas(d: int) -> CheckOutcome:
    """Closed forms on the suspension of the boundary of the (d-1)-simplex:
    deg(l^(d-j) x_v^j) for the two cone points v, the zero orders of A_v at
    all brackets, and ord_[G] deg(l^d) = 0 at the size-d non-faces."""
    c = fixture(f"sigma:{d}")
    o = orient(c)
    eng = generic_engine(c, o, QQ)
    ring = eng.mu.ring
    base = tuple(range(1, d + 1))
    f_br = Bracket(ring, base).ratfunc()
    evidence: dict = {}
    signs: dict[int, set] = {d + 1: set(), d + 2: set()}
    a_values = {}
    for v in (d + 1, d + 2):
        a_v = sigma_a(eng, v)
        a_values[v] = a_v
        den = RatFunc.one(ring)
        for m in base:
            den = den * _brackets_without(eng, base, m, v)
        for j in range(1, d + 1):
            value = eng.degree_ell_times(d - j, FaceMonomial.from_vertices(c.n, [v] * j))
            formula = a_v ** (d - j) * f_br ** (j - 1) / den
            signs[v].add(_up_to_sign(value, formula))
    eps = signs[d + 1]
    evidence["epsilon"] = sorted(x for x in eps if x is not None)
    evidence["sign_pair_opposite"] = (
        len(eps) == 1 and len(signs[d + 2]) == 1 and None not in eps
        and signs[d + 2] == {-x for x in eps}
    )
    a_orders = {}
    for v, a_v in a_values.items():
        a_orders[v] = sorted({v2 for v2 in bracket_profile(eng, a_v).values()})
    evidence["A_orders"] = {str(v): o_ for v, o_ in a_orders.items()}
    a_ok = all(o_ == [0] for o_ in a_orders.values())
    profile = bracket_profile(eng, ell_degree(eng))
    nonface_ok = all(profile[g] == 0 for g in size_d_nonfaces(c))
    evidence["ell_order_at_nonfaces"] = {_key(g): profile[g] for g in size_d_nonfaces(c)}
    ok = evidence["sign_pair_opposite"] and a_ok and nonface_ok
    return CheckOutcome(f"formulas:sigma:{d}", VERIFIED if ok else FALSIFIED, evidence,
                        None if ok else {"signs": {str(k): [str(x) for x in s] for k, s in signs.items()},
                                         "A_orders": evidence["A_orders"]})


def s0_formula() -> CheckOutcome:
    c = fixture("s0")
    eng = generic_engine(c, orient(c), QQ)
    ring = eng.mu.ring
    a11 = RatFunc.from_poly(ring.var(1, 1))
    a12 = RatFunc.from_poly(ring.var(1, 2))
    value = ell_degree(eng)
    formula = (a11 - a12) / (a11 * a12)
    ok = value == formula
    return CheckOutcome("formulas:s0", VERIFIED if ok else FALSIFIED, {"deg(l)": str(value)},
                        None if ok else {"value": str(value)})


def stacked_formulas(d: int, steps: int, seed: int = 0, exact: bool = False) -> CheckOutcome:
    """Stacked spheres: D_q = D_(q-1) D_prim,q with primitive parts of the
    expected dimensions (at a random point, where D_0 is affordable).

    With ``exact`` and d >= 4, also checks symbolically that D_q is independent
    of q > 0 up to squares; the symbolic determinants exhaust memory beyond a
    handful of vertices, so this is off by default."""
    from .artinian import _numeric_engine

    c = fixture(f"stacked:{d}:{steps}")
    eng = generic_engine(c, orient(c), QQ)
    num = _numeric_engine(eng, random.Random(seed))
    report = primitive_determinants(num, seed)
    dom = num.dom
    dets = report.determinants
    evidence: dict = {"hbar_dims": report.hbar_dims, "primitive_dims": report.primitive_dims}
    telescoping = report.primitive[0] == dets[0] and all(
        dom.mul(report.primitive[q], dets[q - 1]) == dets[q] for q in range(1, len(dets))
    )
    evidence["telescoping_at_point"] = telescoping
    dims_ok = all(
        report.primitive_dims[q] == report.hbar_dims[q] - report.hbar_dims[q - 1]
        for q in range(1, len(dets))
    )
    evidence["primitive_dims_ok"] = dims_ok
    independent = True
    if exact and d >= 4:
        d1 = hr_gram(eng, 1).determinant
        for q in range(2, d // 2 + 1):
            independent &= is_square_mod_scalars(hr_gram(eng, q).determinant / d1).is_square
    evidence["independent_of_q"] = independent if exact and d >= 4 else "not checked"
    ok = telescoping and independent and dims_ok
    return CheckOutcome(f"formulas:stacked:{d}:{steps}", VERIFIED if ok else FALSIFIED, evidence,
                        None if ok else dict(evidence))


def locality_check(c: SimplicialComplex, sub: SimplicialComplex, face: tuple[int, ...], char: int = 0) -> CheckOutcome:
    """Degrees of monomials supported on ``face`` only involve coefficients of
    the closed star, and agree between two complexes sharing that star."""
    from .complex import closed_star
    from .degree import monomials_of_degree

    field = field_for(char)
    e1 = generic_engine(c, orient(c, char), field)
    e2 = generic_engine(sub, orient(sub, char), field)
    star = set(closed_star(c, face).vertices)
    evidence: dict = {"face": list(face), "star": sorted(star)}
    local = True
    agree = True
    checked = 0
    for m in monomials_of_degree(face, c.n, c.d):
        if set(m.support) != set(face):
            continue
        checked += 1
        v1 = e1.degree_reduce(m)
        used = {j for _, j in v1.variables()}
        local &= used <= star
        m2 = FaceMonomial(m.exps + (0,) * (sub.n - c.n))
        v2 = e2.degree_reduce(m2)
        agree &= _same_up_to_ring(v1, v2)
    evidence["monomials"] = checked
    evidence["local"] = local
    evidence["agree"] = agree
    ok = local and agree and checked > 0
    return CheckOutcome("locality", VERIFIED if ok else FALSIFIED, evidence, None if ok else dict(evidence))


def _same_up_to_ring(a: RatFunc, b: RatFunc) -> bool:
    """Equality of fractions over rings that differ only by extra columns."""
    return _render(a) == _render(b)


def _render(x: RatFunc) -> tuple[str, tuple[str, ...]]:
    from .poly import format_poly

    return format_poly(x.num), tuple(sorted(f"{format_poly(f.poly)}^{e}" for f, e in x.den.items()))


@_timed
def check_fixture_formulas(name: str) -> CheckOutcome:
    head, *args = name.split(":")
    nums = [int(a) for a in args]
    if head == "s0":
        outcome = s0_formula()
    elif head == "simplex_boundary":
        outcome = simplex_boundary_formulas(*nums)
    elif head in ("sigma", "suspension_sigma"):
        outcome = suspension_formulas(*nums)
    elif head == "stacked":
        outcome = stacked_formulas(*nums)
    elif head == "locality":
        base = fixture("sigma:3")
        outcome = locality_check(base, _subdivided_elsewhere(base), (1, 4))
    elif head == "rp2_suspension":
        c = fixture(name)
        outcome = check_ord_profile(c, orient(c, 2), 0, char=2)
    else:
        raise KeyError(f"no closed forms for fixture {name!r}")
    return outcome


def _subdivided_elsewhere(c: SimplicialComplex) -> SimplicialComplex:
    from .complex import stellar_subdivide

    return stellar_subdivide(c, c.facets[-1])


# ---------------------------------------------------------------------------
# stellar subdivision of a facet


def subdivided_orientation(c: SimplicialComplex, o: Orientation, sub: SimplicialComplex,
                           char: int = 0) -> Orientation:
    """Orientation of a stellar subdivision agreeing with ``o`` on shared facets."""
    o2 = orient(sub, char)
    shared = next(f for f in sub.facets if c.is_facet(f))
    return o2 if o2[shared] == o[shared] else o2.flipped()


@_timed
def check_stellar_block(c: SimplicialComplex, o: Orientation, facet: tuple[int, ...], q: int,
                        *, char: int = 0) -> CheckOutcome:
    """Subdividing ``facet`` extends a basis with support disjoint from it by
    x_(n+1)^q; the new Gram matrix is block diagonal with the old one in the
    corner and a new diagonal entry whose ord along [facet] is 2q - 1."""
    from .artinian import ord_at
    from .complex import stellar_subdivide

    field = field_for(char)
    facet = tuple(sorted(facet))
    eng = generic_engine(c, o, field)
    sub = stellar_subdivide(c, facet)
    eng2 = generic_engine(sub, subdivided_orientation(c, o, sub, char), field)
    basis = select_basis(eng, q, disjoint_from=facet)
    old = hr_gram(eng, q, basis).matrix
    ys = [FaceMonomial(m.exps + (0,)) for m in basis.monomials]
    ys.append(FaceMonomial.from_dict(sub.n, {sub.n: q}))
    p = len(ys) - 1
    k = c.d - 2 * q
    evidence: dict = {"facet": list(facet), "q": q, "basis": [str(m) for m in ys]}
    off = [i for i in range(p) if eng2.degree_ell_times(k, ys[i] * ys[p])]
    corner = all(
        _same_up_to_ring(old[i][j], eng2.degree_ell_times(k, ys[i] * ys[j]))
        for i in range(p) for j in range(i, p)
    )
    entry = eng2.degree_ell_times(k, ys[p] * ys[p])
    order = ord_at(Bracket(eng2.mu.ring, facet), entry) if entry else None
    evidence.update(off_diagonal_nonzero=off, corner_matches=corner, new_entry_ord=order)
    ok = not off and corner and order == 2 * q - 1
    return CheckOutcome("stellar_block", VERIFIED if ok else FALSIFIED, evidence, None if ok else dict(evidence))


# ---------------------------------------------------------------------------
# Hilbert functions of concrete systems

RETRY_DRAWS = 8
RP2_SUSPENSION_RANDOM = ((1, 4, 9, 6, 1), (1, 4, 8, 4, 1))
RP2_SUSPENSION_SPLIT = ((1, 4, 9, 7, 1), (1, 4, 6, 4, 1))


def _draw_matrix(field: Field, d: int, n: int, rng: random.Random,
                 blocks: list[tuple[range, range]] | None) -> list[list]:
    """A random d x n matrix, zero outside ``blocks`` (row range, column range,
    both 1-based) when given."""
    rows = []
    for i in range(1, d + 1):
        row = []
        for j in range(1, n + 1):
            live = blocks is None or any(i in r and j in cs for r, cs in blocks)
            row.append(field.random(rng) if live else field.zero)
        rows.append(row)
    return rows


def hilbert_by_draws(c: SimplicialComplex, o: Orientation, field: Field, seed: int,
                     blocks: list[tuple[range, range]] | None = None,
                     draws: int = RETRY_DRAWS) -> tuple[tuple, tuple, int, int] | None:
    """Hilbert functions of H and H-bar for seeded random systems.

    Draws that are not l.s.o.p.s are skipped; stops once two valid draws
    agree.  Returns (h, hbar, draws used, draws skipped), or None when no
    two draws agree within the limit."""
    rng = random.Random(seed)
    seen: list[tuple] = []
    skipped = 0
    for k in range(draws):
        mu = numeric_lsop(field, _draw_matrix(field, c.d, c.n, rng, blocks), label=f"draw {k}")
        if not is_lsop(c, mu):
            skipped += 1
            continue
        report = hilbert_report(DegreeEngine(c, o, mu), seed)
        key = (tuple(report.h_dims), tuple(report.hbar_dims))
        if key in seen:
            return key[0], key[1], k + 1, skipped
        seen.append(key)
    return None


@_timed
def check_hilbert_dependence(seed: int = 7, e: int = 10) -> CheckOutcome:
    """The suspension of the six-vertex RP^2 over GF(2^e): Hilbert functions
    of H and H-bar for a random system and for one split between the RP^2
    vertices (rows 1..3) and the suspension points (row 4)."""
    c = fixture("rp2_suspension")
    o = orient(c, 2)
    field = BinaryField(e)
    split = [(range(1, 4), range(1, 7)), (range(4, 5), range(7, 9))]
    evidence: dict = {"field": f"GF(2^{e})", "seed": seed}
    ok = True
    for tag, blocks, want in (("random", None, RP2_SUSPENSION_RANDOM), ("split", split, RP2_SUSPENSION_SPLIT)):
        got = hilbert_by_draws(c, o, field, seed, blocks)
        if got is None:
            evidence[tag] = {"agreed": False}
            ok = False
            continue
        h, hbar, used, skipped = got
        evidence[tag] = {"h": list(h), "hbar": list(hbar), "draws": used, "skipped": skipped,
                         "expected": [list(want[0]), list(want[1])]}
        ok &= (h, hbar) == want
    return CheckOutcome("hilbert_dependence", VERIFIED if ok else FALSIFIED, evidence,
                        None if ok else dict(evidence))


@_timed
def check_anisotropy_failure(char: int = 0) -> CheckOutcome:
    """On the 4-vertex suspension with the punctured system for the non-face
    {1,2}, x_3 is nonzero in the quotient while x_3^2 vanishes."""
    c = fixture("sigma:2")
    field = field_for(char)
    eng = DegreeEngine(c, orient(c, char), theta_punctured(c, (1, 2), field))
    report = anisotropy_witness_check(eng, FaceMonomial.from_vertices(c.n, (3,)))
    evidence = {"element": report.element, "nonzero": report.nonzero, "square_zero": report.square_zero,
                "pairing_witness": report.nonzero_witness}
    ok = report.nonzero and report.square_zero
    return CheckOutcome("anisotropy_failure", VERIFIED if ok else FALSIFIED, evidence,
                        None if ok else dict(evidence))


@_timed
def check_novik_swartz(c: SimplicialComplex, o: Orientation, *, char: int = 0, lsop: str = "generic",
                       seed: int = 0) -> CheckOutcome:
    """Computed Gorenstein-quotient dims against the Novik-Swartz formula,
    for the generic system or the punctured one at the first size-d non-face."""
    field = field_for(char)
    evidence: dict = {"char": char, "lsop": lsop}
    if lsop == "generic":
        mu = generic_lsop(field, c.d, c.n)
    else:
        nonfaces = size_d_nonfaces(c)
        if not nonfaces:
            evidence["reason"] = "no size-d non-faces"
            return CheckOutcome("novik_swartz", VERIFIED, evidence)
        evidence["nonface"] = list(nonfaces[0])
        mu = theta_punctured(c, nonfaces[0], field)
    report = hilbert_report(DegreeEngine(c, o, mu), seed)
    predicted = novik_swartz(c, char)
    evidence.update(hbar=report.hbar_dims, predicted=predicted)
    ok = report.hbar_dims == predicted
    return CheckOutcome("novik_swartz", VERIFIED if ok else FALSIFIED, evidence,
                        None if ok else {"hbar": report.hbar_dims, "predicted": predicted})


# ---------------------------------------------------------------------------
# negative control


def corrupted_orientation(c: SimplicialComplex, char: int = 0) -> Orientation:
    """A valid orientation with the sign of the last facet flipped."""
    o = orient(c, char)
    last = c.facets[-1]
    return o.with_sign(last, -o[last])
