"""Graded pieces of artinian reductions and their Gorenstein quotients.

Everything is phrased through a ``DegreeEngine``: the Gorenstein quotient in
degree q is the row space of the pairing matrix deg(y * z), so its dimension
is a rank and a basis is a set of rows carrying a nonzero maximal minor.

Over a symbolic domain ranks are never computed symbolically.  A random
point in a large finite field gives a lower bound (with a nonzero minor as
witness) and the dimensions of H^q, H^(d-q) at the same point give an upper
bound; when they meet the rank is exact.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Sequence
from dataclasses import dataclass, field as dc_field
from math import comb

from . import linalg
from .complex import SimplicialComplex, f_h_vectors, topology_report
from .degree import (
    LSOP,
    DegreeEngine,
    DegreeError,
    FaceMonomial,
    face_monomials,
    is_lsop,
    specialize,
)
from .fields import Field, sampling_field
from .poly import format_poly
from .ratfunc import (
    Bracket,
    DenominatorVanishes,
    FunctionField,
    RatFunc,
    det as ratfunc_det,
    is_square_mod_scalars,
    ord_at,
)

__all__ = [
    "AnisotropyReport",
    "GradedBasis",
    "GramReport",
    "HilbertReport",
    "RankUnresolved",
    "anisotropy_witness_check",
    "face_monomials",
    "hilbert_report",
    "hr_gram",
    "lefschetz_check",
    "multiplication_rank",
    "novik_swartz",
    "pairing_matrix",
    "primitive_determinants",
    "select_basis",
]

MAX_POINT_TRIES = 6


class RankUnresolved(RuntimeError):
    """The random-point bounds on a symbolic rank did not meet."""


# ---------------------------------------------------------------------------
# helpers over an engine


def _field_of(eng: DegreeEngine) -> Field | None:
    """The coefficient field when the engine computes numbers, else None."""
    return None if isinstance(eng.dom, FunctionField) else eng.dom


def _numeric_engine(eng: DegreeEngine, rng: random.Random) -> DegreeEngine:
    """The engine specialized at a random point of a large finite field.

    The specialized degree map equals the evaluated generic degree map as
    long as the point keeps Stanley's criterion."""
    mu = eng.mu
    sf = sampling_field(mu.ring.field)
    for _ in range(MAX_POINT_TRIES):
        point = [sf.random(rng) for _ in range(mu.ring.nvars)]
        try:
            num = specialize(mu, point, sf)
        except DenominatorVanishes:
            continue
        if is_lsop(eng.c, num):
            return DegreeEngine(eng.c, eng.o, num, check=False)
    raise RankUnresolved("no random point kept the l.s.o.p. condition")


def _degree_of_product(eng: DegreeEngine, y: FaceMonomial, z: FaceMonomial):
    m = y * z
    if not eng.c.is_face(m.support):
        return eng.dom.zero
    return eng.degree_reduce(m)


def pairing_matrix(eng: DegreeEngine, q: int) -> tuple[list[FaceMonomial], list[FaceMonomial], list[list]]:
    """Rows y in degree q, columns z in degree d - q, entries deg(y * z)."""
    d = eng.d
    if not 0 <= q <= d:
        raise DegreeError(f"degree {q} outside 0..{d}")
    rows = face_monomials(eng.c, q)
    cols = face_monomials(eng.c, d - q)
    matrix = [[_degree_of_product(eng, y, z) for z in cols] for y in rows]
    return rows, cols, matrix


def multiplication_rank(c: SimplicialComplex, mu: LSOP, q: int) -> int:
    """Rank of (mu_1, ..., mu_d) : K[Delta]_{q-1}^d -> K[Delta]_q for a
    numeric system (entries in a field)."""
    if q <= 0:
        return 0
    field = mu.domain
    target = {m: k for k, m in enumerate(face_monomials(c, q))}
    rows = []
    for m in face_monomials(c, q - 1):
        for i in range(1, mu.d + 1):
            row = [field.zero] * len(target)
            for j in range(1, mu.n + 1):
                coeff = mu.entry(i, j)
                if field.is_zero(coeff):
                    continue
                prod = m * FaceMonomial.from_vertices(c.n, [j])
                k = target.get(prod)
                if k is not None:
                    row[k] = field.add(row[k], coeff)
            rows.append(row)
    return linalg.rank(rows, field) if rows and target else 0


def _numeric_dims(eng: DegreeEngine) -> list[int]:
    """dim H^q for q = 0..d of a numeric engine."""
    dims = []
    for q in range(eng.d + 1):
        size = len(face_monomials(eng.c, q))
        dims.append(size - multiplication_rank(eng.c, eng.mu, q))
    return dims


# ---------------------------------------------------------------------------
# bases


@dataclass
class GradedBasis:
    q: int
    monomials: list[FaceMonomial]
    partners: list[FaceMonomial]
    certificate: object
    exact: bool

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "monomials": [str(m) for m in self.monomials],
            "partners": [str(m) for m in self.partners],
            "certificate_verified": self.exact,
        }


def _rank_and_rows(eng: DegreeEngine, q: int, order: Sequence[int] | None,
                   allowed: set[int] | None, rng: random.Random):
    """Rank of the degree-q pairing matrix and a certified row/column choice.

    Returns (rows, cols, row indices, column indices, rank lower bound, rank
    upper bound); the rank is exact when the two bounds agree."""
    field = _field_of(eng)
    num = eng if field is not None else _numeric_engine(eng, rng)
    nfield = num.dom
    rows, cols, matrix = pairing_matrix(num, q)
    full = linalg.rank(matrix, nfield) if matrix and cols else 0
    if field is not None:
        upper = full
    else:
        dims = _numeric_dims(num)
        upper = min(dims[q], dims[eng.d - q])
    candidates = list(order) if order is not None else list(range(len(rows)))
    if allowed is not None:
        candidates = [k for k in candidates if k in allowed]
    chosen = linalg.independent_rows(matrix, nfield, candidates)
    sub = [matrix[k] for k in chosen]
    col_idx = linalg.independent_rows(linalg.transpose(sub), nfield) if sub else []
    return rows, cols, chosen, col_idx, full, upper


def default_order(c: SimplicialComplex, monomials: Sequence[FaceMonomial]) -> list[int]:
    """Greedy preference for basis rows: supports lying in few facets first.

    Degrees of such monomials only involve brackets of a small star, so the
    resulting Gram entries stay small."""
    star = [len(c.facets_containing(m.support)) for m in monomials]
    return sorted(range(len(monomials)), key=lambda k: (star[k], k))


def select_basis(eng: DegreeEngine, q: int, *, disjoint_from: Sequence[int] | None = None,
                 seed: int | None = None, shuffle: bool = False, verify: bool = True) -> GradedBasis:
    """Monomials whose images form a basis of the Gorenstein quotient in degree q.

    ``disjoint_from`` restricts to monomials with support disjoint from a
    facet.  ``shuffle`` draws a random greedy order (for basis-invariance
    checks).  With ``verify`` the chosen maximal minor is checked to be
    nonzero exactly over the engine's domain."""
    rng = random.Random(seed)
    if disjoint_from is not None:
        facet = tuple(sorted(disjoint_from))
        if not eng.c.is_facet(facet):
            raise DegreeError("disjoint-support bases are only guaranteed for facets")
    rows_all = face_monomials(eng.c, q)
    order = default_order(eng.c, rows_all)
    if shuffle:
        rng.shuffle(order)
    allowed = None
    if disjoint_from is not None:
        blocked = set(disjoint_from)
        allowed = {k for k, m in enumerate(rows_all) if not blocked & set(m.support)}
    for _ in range(MAX_POINT_TRIES):
        rows, cols, chosen, col_idx, full, upper = _rank_and_rows(eng, q, order, allowed, rng)
        if len(chosen) != full:
            raise DegreeError("restricted monomials do not span the quotient")
        if full == upper:
            break
    else:
        raise RankUnresolved(f"rank bounds did not meet in degree {q}")
    basis = [rows[k] for k in chosen]
    partners = [cols[k] for k in col_idx]
    cert = None
    exact = False
    if verify:
        minor = [[_degree_of_product(eng, y, z) for z in partners] for y in basis]
        cert = _det(eng, minor) if basis else eng.dom.one
        if eng.dom.is_zero(cert):
            raise RankUnresolved("certificate minor vanished exactly")
        exact = True
    return GradedBasis(q, basis, partners, cert, exact)


def _det(eng: DegreeEngine, matrix: list[list]):
    if not matrix:
        return eng.dom.one
    field = _field_of(eng)
    if field is None:
        return ratfunc_det(matrix)
    return linalg.det(matrix, field)


def pairing_rank(eng: DegreeEngine, q: int, seed: int = 0) -> int:
    """dim of the Gorenstein quotient in degree q (exact, via bounds)."""
    return select_basis(eng, q, seed=seed, verify=False).dim


# ---------------------------------------------------------------------------
# Hilbert functions


def novik_swartz(c: SimplicialComplex, char: int) -> list[int]:
    """Predicted dims of the Gorenstein quotient of a homology manifold."""
    _, h = f_h_vectors(c)
    betti = topology_report(c, char).reduced_betti
    d = c.d
    out = []
    for q in range(d + 1):
        if q in (0, d):
            out.append(1)
            continue
        s = sum((-1) ** (q - p) * betti[p] for p in range(q))
        out.append(h[q] + comb(d, q) * s)
    return out


@dataclass
class HilbertReport:
    h_dims: list[int]
    hbar_dims: list[int]
    predicted: list[int] | None
    lsop: str
    h_exact: bool = True

    def as_dict(self) -> dict:
        return {
            "lsop": self.lsop,
            "H": self.h_dims,
            "Hbar": self.hbar_dims,
            "novik_swartz": self.predicted,
            "H_exact": self.h_exact,
        }


def hilbert_report(eng: DegreeEngine, seed: int = 0) -> HilbertReport:
    """Dimensions of H and of its Gorenstein quotient in every degree.

    The quotient dimensions are exact.  For a symbolic system dim H^q is
    computed at a random point, which bounds the generic value from above;
    ``h_exact`` records when that bound meets dim H-bar^q from below."""
    rng = random.Random(seed)
    num = eng if _field_of(eng) is not None else _numeric_engine(eng, rng)
    h_dims = _numeric_dims(num)
    hbar = [pairing_rank(eng, q, seed) for q in range(eng.d + 1)]
    h_exact = _field_of(eng) is not None or h_dims == hbar
    char = eng.mu.ring.field.characteristic if eng.mu.ring is not None else eng.dom.characteristic
    predicted = None
    report = topology_report(eng.c, char)
    if report.is_homology_manifold and report.connected:
        predicted = novik_swartz(eng.c, char)
    return HilbertReport(h_dims, hbar, predicted, eng.mu.label, h_exact)


# ---------------------------------------------------------------------------
# Hodge-Riemann forms


@dataclass
class GramReport:
    q: int
    basis: list[FaceMonomial]
    matrix: list[list]
    determinant: object
    ord_profile: dict[tuple[int, ...], int] = dc_field(default_factory=dict)
    square_class: object = None

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "basis": [str(m) for m in self.basis],
            "matrix": [[_text(x) for x in row] for row in self.matrix],
            "determinant": _text(self.determinant),
            "ord_profile": {",".join(map(str, k)): v for k, v in sorted(self.ord_profile.items())},
            "square_class": None if self.square_class is None else str(self.square_class),
        }


def _text(x) -> str:
    if isinstance(x, RatFunc):
        if x.is_polynomial():
            return format_poly(x.num)
        return f"({format_poly(x.num)})/({format_poly(x.denominator())})"
    return str(x)


def hr_gram(eng: DegreeEngine, q: int, basis: GradedBasis | None = None, *,
            ord_profile: bool = False) -> GramReport:
    """Gram matrix deg(l^(d-2q) * y_i * y_j) on a basis and its determinant."""
    d = eng.d
    if not 0 <= 2 * q <= d:
        raise DegreeError(f"Hodge-Riemann forms need 0 <= 2q <= d, got q={q}")
    if basis is None:
        basis = select_basis(eng, q)
    ys = basis.monomials
    size = len(ys)
    matrix: list[list] = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            value = eng.degree_ell_times(d - 2 * q, ys[i] * ys[j])
            matrix[i][j] = value
            matrix[j][i] = value
    determinant = _det(eng, matrix)
    report = GramReport(q, ys, matrix, determinant)
    if ord_profile:
        report.ord_profile = bracket_profile(eng, determinant)
    return report


def bracket_profile(eng: DegreeEngine, value: RatFunc) -> dict[tuple[int, ...], int]:
    """ord_[F](value) for every size-d subset F of the vertices."""
    ring = eng.mu.ring
    if ring is None or not isinstance(value, RatFunc):
        raise DegreeError("ord profiles need a symbolic value")
    if not value:
        raise DegreeError("ord of zero is undefined")
    return {
        cols: ord_at(Bracket(ring, cols), value)
        for cols in itertools.combinations(range(1, eng.n + 1), eng.d)
    }


def lefschetz_check(eng: DegreeEngine, q: int, seed: int = 0) -> bool:
    """Whether l^(d-2q) : H^q -> H^(d-q) is an isomorphism on the Gorenstein
    quotient, i.e. the Hodge-Riemann Gram determinant is nonzero.

    A nonzero value at a random point certifies this; otherwise the
    determinant is computed exactly."""
    basis = select_basis(eng, q, seed=seed, verify=False)
    if _field_of(eng) is None:
        num = _numeric_engine(eng, random.Random(seed))
        numeric_basis = GradedBasis(q, basis.monomials, basis.partners, None, False)
        if not num.dom.is_zero(hr_gram(num, q, numeric_basis).determinant):
            return True
    return not eng.dom.is_zero(hr_gram(eng, q, basis).determinant)


@dataclass
class PrimitiveReport:
    determinants: list
    primitive: list
    primitive_dims: list[int]
    hbar_dims: list[int]


def primitive_determinants(eng: DegreeEngine, seed: int = 0) -> PrimitiveReport:
    """D_q for 0 <= q <= d/2 and the ratios D_prim,q = D_q / D_(q-1)."""
    d = eng.d
    dom = eng.dom
    dets = []
    dims = []
    for q in range(d // 2 + 1):
        basis = select_basis(eng, q, seed=seed)
        dq = hr_gram(eng, q, basis).determinant
        if dom.is_zero(dq):
            raise DegreeError(f"l is not a strong Lefschetz element in degree {q}")
        dets.append(dq)
        dims.append(basis.dim)
    prim = [dets[0]] + [dom.div(dets[q], dets[q - 1]) for q in range(1, len(dets))]
    prim_dims = [dims[0]] + [primitive_dimension(eng, q, seed) for q in range(1, len(dets))]
    return PrimitiveReport(dets, prim, prim_dims, dims)


def primitive_dimension(eng: DegreeEngine, q: int, seed: int = 0) -> int:
    """dim of {y in H^q : l^(d-2q+1) y = 0} in the Gorenstein quotient."""
    rng = random.Random(seed)
    num = eng if _field_of(eng) is not None else _numeric_engine(eng, rng)
    field = num.dom
    ys = select_basis(num, q, seed=seed, verify=False).monomials
    zs = select_basis(num, q - 1, seed=seed, verify=False).monomials
    k = eng.d - 2 * q + 1
    matrix = [[num.degree_ell_times(k, y * z) for z in zs] for y in ys]
    return len(ys) - (linalg.rank(matrix, field) if zs else 0)


# ---------------------------------------------------------------------------
# anisotropy witnesses


@dataclass
class AnisotropyReport:
    element: str
    nonzero: bool
    square_zero: bool
    nonzero_witness: str | None

    def as_dict(self) -> dict:
        return {
            "element": self.element,
            "nonzero": self.nonzero,
            "square_zero": self.square_zero,
            "nonzero_witness": self.nonzero_witness,
        }


def anisotropy_witness_check(eng: DegreeEngine, element: FaceMonomial) -> AnisotropyReport:
    """Decide y != 0 and y^2 = 0 in the Gorenstein quotient by pairing against
    all complementary monomials."""
    d = eng.d
    q = element.degree
    witness = None
    for z in face_monomials(eng.c, d - q):
        if not eng.dom.is_zero(_degree_of_product(eng, element, z)):
            witness = str(z)
            break
    square = element * element
    square_zero = all(
        eng.dom.is_zero(_degree_of_product(eng, square, z)) for z in face_monomials(eng.c, d - 2 * q)
    ) if 2 * q <= d else True
    return AnisotropyReport(str(element), witness is not None, square_zero, witness)


def square_class_ratio(a: RatFunc, b: RatFunc):
    """Square class of a / b, or None when it is not a scalar times a square."""
    result = is_square_mod_scalars(a / b)
    return result.scalar if result.is_square else None
