"""Linear systems of parameters and the degree map.

The degree of a degree-d monomial is computed two independent ways:

* ``degree_reduce`` rewrites non-squarefree monomials with Cramer's rule into
  monomials of strictly larger support until only facet monomials remain;
* ``degree_kx`` sums one rational term per facet, with an auxiliary column
  of coefficients that must drop out of the total.

Both run over any domain that offers the field-like methods ``add``,
``sub``, ``neg``, ``mul``, ``div``, ``from_int``, ``from_scalar`` and
``is_zero``: exact rational functions, finite fields, or truncated Laurent
series along a line.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from math import factorial

from .complex import Face, Orientation, SimplicialComplex
from .fields import Field
from .poly import PolyRing
from .ratfunc import (
    Bracket,
    FunctionField,
    RatFunc,
    minor_factor,
    registry,
    split_known_factors,
    variable_factor,
)
from .series import LaurentDomain


class DegreeError(ValueError):
    pass


class NotLSOP(DegreeError):
    pass


class ExtendedResidue(AssertionError):
    """The auxiliary column failed to cancel from a Karu-Xiao sum."""


# ---------------------------------------------------------------------------
# monomials


@dataclass(frozen=True, order=True)
class FaceMonomial:
    """x_1^e_1 ... x_n^e_n, stored as the exponent tuple (e_1, ..., e_n)."""

    exps: tuple[int, ...]

    @classmethod
    def from_dict(cls, n: int, exps: Mapping[int, int]) -> FaceMonomial:
        out = [0] * n
        for v, e in exps.items():
            if e < 0:
                raise DegreeError("negative exponent")
            out[v - 1] += e
        return cls(tuple(out))

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> FaceMonomial:
        out = [0] * n
        for v in vertices:
            out[v - 1] += 1
        return cls(tuple(out))

    @classmethod
    def parse(cls, n: int, text: str) -> FaceMonomial:
        """Parse ``x1^2*x3`` (or ``1``)."""
        exps: dict[int, int] = {}
        text = text.strip()
        if text != "1":
            for factor in text.split("*"):
                base, _, power = factor.strip().partition("^")
                if not base.startswith("x"):
                    raise DegreeError(f"bad monomial factor {factor!r}")
                v = int(base[1:])
                if not 1 <= v <= n:
                    raise DegreeError(f"vertex {v} out of range")
                exps[v] = exps.get(v, 0) + int(power or 1)
        return cls.from_dict(n, exps)

    @property
    def n(self) -> int:
        return len(self.exps)

    @property
    def degree(self) -> int:
        return sum(self.exps)

    @property
    def support(self) -> Face:
        return tuple(v + 1 for v, e in enumerate(self.exps) if e)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exps)

    def exponent(self, v: int) -> int:
        return self.exps[v - 1]

    def __mul__(self, other: FaceMonomial) -> FaceMonomial:
        return FaceMonomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __str__(self) -> str:
        parts = [f"x{v + 1}" if e == 1 else f"x{v + 1}^{e}" for v, e in enumerate(self.exps) if e]
        return "*".join(parts) if parts else "1"


def monomials_of_degree(vertices: Sequence[int], n: int, q: int) -> list[FaceMonomial]:
    out = []
    for combo in itertools.combinations_with_replacement(vertices, q):
        out.append(FaceMonomial.from_vertices(n, combo))
    return out


def multinomial(exps: Iterable[int]) -> int:
    exps = list(exps)
    result = factorial(sum(exps))
    for e in exps:
        result //= factorial(e)
    return result


# ---------------------------------------------------------------------------
# linear systems of parameters


class LSOP:
    """d linear forms mu_i = sum_j mu_{i,j} x_j over a domain.

    ``entry(i, j)`` gives mu_{i,j} for 1 <= i <= d and 1 <= j <= n; column 0
    is the auxiliary column used by the Karu-Xiao sum.  ``bracket`` returns
    ev_mu([cols]) for a sorted column tuple.
    """

    def __init__(self, domain, d: int, n: int, entries: Sequence[Sequence],
                 *, kind: str = "custom", bracket_fn: Callable | None = None,
                 ring: PolyRing | None = None, label: str = ""):
        if len(entries) != d or any(len(row) != n + 1 for row in entries):
            raise DegreeError("l.s.o.p. matrix must be d x (n+1) including column 0")
        self.domain = domain
        self.d = d
        self.n = n
        self.entries = [list(r) for r in entries]
        self.kind = kind
        self.ring = ring
        self.label = label or kind
        self._bracket_fn = bracket_fn
        self._brackets: dict[tuple[int, ...], object] = {}

    def entry(self, i: int, j: int):
        return self.entries[i - 1][j]

    def bracket(self, cols: Sequence[int]):
        cols = tuple(cols)
        found = self._brackets.get(cols)
        if found is None:
            if self._bracket_fn is not None:
                found = self._bracket_fn(cols)
            else:
                found = leibniz_det(self.domain, [[self.entries[i][c] for c in cols] for i in range(self.d)])
            self._brackets[cols] = found
        return found

    def bracket_factors(self, cols: Sequence[int]) -> set:
        """Registered irreducible factors of a symbolic bracket value."""
        value = self.bracket(tuple(cols))
        if not isinstance(value, RatFunc) or not value:
            return set()
        return set(split_known_factors(value.num)[0])

    def is_symbolic(self) -> bool:
        return isinstance(self.domain, FunctionField)


def leibniz_det(domain, m: Sequence[Sequence]):
    size = len(m)
    terms = []
    for perm in itertools.permutations(range(size)):
        inv = sum(1 for a in range(size) for b in range(a + 1, size) if perm[a] > perm[b])
        prod = domain.one
        for i, j in enumerate(perm):
            x = m[i][j]
            if domain.is_zero(x):
                prod = None
                break
            prod = domain.mul(prod, x)
        if prod is not None:
            terms.append(domain.neg(prod) if inv % 2 else prod)
    return domain.sum(terms) if terms else domain.zero


def generic_lsop(field: Field, d: int, n: int, aux: str = "e1") -> LSOP:
    """The generic system theta_i = sum_j a_{i,j} x_j over K = k(a_{i,j}).

    ``aux`` fixes column 0: ``"extended"`` keeps the variables a_{i,0};
    ``"e1"`` sets column 0 to the first unit vector, which is exact because
    Karu-Xiao sums do not depend on column 0.
    """
    ring = PolyRing(field, d, n)
    dom = FunctionField(ring)
    entries = [[RatFunc.from_poly(ring.var(i, j)) for j in range(n + 1)] for i in range(1, d + 1)]
    if aux == "e1":
        for i in range(d):
            entries[i][0] = dom.one if i == 0 else dom.zero
    elif aux != "extended":
        raise DegreeError(f"unknown auxiliary column mode {aux!r}")

    def bracket(cols: tuple[int, ...]):
        if len(set(cols)) < len(cols):
            return dom.zero
        if cols[0] == 0 and aux == "e1":
            return _row_tail_minor(ring, cols[1:])
        return Bracket(ring, cols).ratfunc()

    return LSOP(dom, d, n, entries, kind="generic", bracket_fn=bracket, ring=ring,
                label=f"generic({aux})")


def _row_tail_minor(ring: PolyRing, cols: tuple[int, ...]) -> RatFunc:
    """Minor on rows 2..d and the given columns, as a factored RatFunc."""
    if not cols:
        return RatFunc.one(ring)
    fac, c = minor_factor(ring, tuple(range(2, ring.d + 1)), cols)
    return RatFunc.from_factor(fac).scale(c)


def theta_punctured(c: SimplicialComplex, F: Iterable[int], field: Field, aux: str = "e1") -> LSOP:
    """theta_F: the generic system with a_{1,j} replaced by 0 for j in F."""
    F = tuple(sorted(F))
    d, n = c.d, c.n
    if len(F) != d:
        raise DegreeError(f"punctured system needs |F| = {d}")
    if c.is_facet(F):
        raise NotLSOP(f"{F} is a facet, so theta_F fails Stanley's criterion")
    ring = PolyRing(field, d, n)
    dom = FunctionField(ring)
    entries = [[RatFunc.from_poly(ring.var(i, j)) for j in range(n + 1)] for i in range(1, d + 1)]
    for j in F:
        entries[0][j] = dom.zero
    if aux == "e1":
        for i in range(d):
            entries[i][0] = dom.one if i == 0 else dom.zero
    elif aux != "extended":
        raise DegreeError(f"unknown auxiliary column mode {aux!r}")
    zeroed = set(F)

    def bracket(cols: tuple[int, ...]):
        if len(set(cols)) < len(cols):
            return dom.zero
        if cols[0] == 0 and aux == "e1":
            return _row_tail_minor(ring, cols[1:])
        live = [p for p, col in enumerate(cols) if col not in zeroed]
        if not live:
            return dom.zero
        if len(live) == 1:
            p = live[0]
            col = cols[p]
            value = RatFunc.from_factor(variable_factor(ring, 1, col))
            value = value * _row_tail_minor(ring, cols[:p] + cols[p + 1 :])
            return -value if p % 2 else value
        if not zeroed & set(cols):
            return Bracket(ring, cols).ratfunc()
        # row 1 keeps at least two entries: irreducible, so register it
        poly = ring.zero()
        for p in live:
            term = ring.var(1, cols[p]) * ring.bracket(cols[:p] + cols[p + 1 :], range(2, d + 1))
            poly = poly - term if p % 2 else poly + term
        label = "[" + ",".join(map(str, cols)) + "]^F"
        fac, scalar = registry(ring).register(poly, label)
        return RatFunc.from_factor(fac).scale(scalar)

    return LSOP(dom, d, n, entries, kind="punctured", bracket_fn=bracket, ring=ring,
                label="punctured:" + ",".join(map(str, F)))


def numeric_lsop(field: Field, matrix: Sequence[Sequence], aux: Sequence | None = None, label: str = "numeric") -> LSOP:
    """An l.s.o.p. with concrete coefficients; ``matrix`` is d x n."""
    d = len(matrix)
    n = len(matrix[0])
    aux = list(aux) if aux is not None else [field.one] + [field.zero] * (d - 1)
    entries = [[aux[i]] + list(matrix[i]) for i in range(d)]
    return LSOP(field, d, n, entries, kind="numeric", label=label)


def specialize(mu: LSOP, point: Sequence, field: Field) -> LSOP:
    """ev at a point: every symbolic entry evaluated (point indexed by ring
    variable); column 0 is kept as in ``mu`` when it is constant."""
    ring = mu.ring
    if ring is None:
        raise DegreeError("only symbolic systems can be specialized")
    rows = []
    for i in range(1, mu.d + 1):
        rows.append([mu.entry(i, j).evaluate(point, field) for j in range(0, mu.n + 1)])
    return LSOP(field, mu.d, mu.n, rows, kind="numeric", label=f"ev({mu.label})")


def line_lsop(mu: LSOP, point: Sequence, direction: Sequence, field: Field, precision: int) -> LSOP:
    """Restriction of a symbolic system to the line point + t * direction,
    with entries as truncated Laurent series in t."""
    ring = mu.ring
    dom = LaurentDomain(field, precision)
    rows = []
    for i in range(1, mu.d + 1):
        row = []
        for j in range(mu.n + 1):
            value = mu.entry(i, j)
            if value.is_constant():
                row.append(dom.from_scalar(field.convert(value.constant_value(), ring.field)))
                continue
            if not value.is_polynomial() or value.num.degree() != 1 or value.num.constant_value() != 0:
                raise DegreeError("line restriction needs entries that are linear forms")
            c0 = value.num.evaluate(point, field)
            c1 = value.num.evaluate(direction, field)
            row.append(dom.linear(c0, c1))
        rows.append(row)
    return LSOP(dom, mu.d, mu.n, rows, kind="line", label=f"line({mu.label})")


def is_lsop(c: SimplicialComplex, mu: LSOP) -> bool:
    """Stanley's criterion: every facet bracket is nonzero."""
    if mu.d != c.d or mu.n != c.n:
        return False
    return all(not mu.domain.is_zero(mu.bracket(f)) for f in c.facets)


# ---------------------------------------------------------------------------
# the degree map


def _sort_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


class DegreeEngine:
    """deg_mu on degree-d monomials of a complex, memoized per monomial."""

    def __init__(self, c: SimplicialComplex, o: Orientation, mu: LSOP, *, check: bool = True):
        if not c.pure:
            raise DegreeError("the degree map needs a pure complex")
        if mu.d != c.d or mu.n != c.n:
            raise DegreeError("l.s.o.p. shape does not match the complex")
        self.c = c
        self.o = o
        self.mu = mu
        self.dom = mu.domain
        self.d = c.d
        self.n = c.n
        if check and not is_lsop(c, mu):
            raise NotLSOP("Stanley's criterion fails: a facet bracket vanishes")
        self._reduce_cache: dict[tuple[int, ...], object] = {}
        self._pivot_facet: dict[Face, Face | None] = {}

    @cached_property
    def _zero(self):
        return self.dom.zero

    def epsilon(self, facet: Face) -> int:
        return 1 if self.o.char2 else self.o[facet]

    def _signed(self, value, sign: int):
        return value if sign > 0 else self.dom.neg(value)

    def _check_degree(self, m: FaceMonomial) -> None:
        if m.n != self.n:
            raise DegreeError("monomial has the wrong number of variables")
        if m.degree != self.d:
            raise DegreeError(f"monomial {m} does not have degree {self.d}")

    def facet_pivot(self, support: Face) -> Face | None:
        found = self._pivot_facet.get(support, False)
        if found is False:
            s = set(support)
            found = next((f for f in self.c.facets if s <= set(f)), None)
            self._pivot_facet[support] = found
        return found

    # Cramer reduction ----------------------------------------------------

    def degree_reduce(self, m: FaceMonomial):
        self._check_degree(m)
        return self._reduce(m.exps)

    def _reduce(self, exps: tuple[int, ...]):
        found = self._reduce_cache.get(exps)
        if found is not None:
            return found
        dom = self.dom
        support = tuple(v + 1 for v, e in enumerate(exps) if e)
        facet = self.facet_pivot(support)
        if facet is None:
            value = dom.zero
        elif len(support) == self.d:
            value = self._signed(dom.div(dom.one, self.mu.bracket(facet)), self.epsilon(facet))
        else:
            j = next(v + 1 for v, e in enumerate(exps) if e > 1)
            pos = facet.index(j)
            in_face = set(facet)
            terms = []
            for v in range(1, self.n + 1):
                if v in in_face or not self.c.is_face(support + (v,)):
                    continue
                replaced = facet[:pos] + (v,) + facet[pos + 1 :]
                cols = tuple(sorted(replaced))
                bracket = self.mu.bracket(cols)
                if dom.is_zero(bracket):
                    continue
                new = list(exps)
                new[j - 1] -= 1
                new[v - 1] += 1
                sub = self._reduce(tuple(new))
                if dom.is_zero(sub):
                    continue
                terms.append(self._signed(dom.mul(bracket, sub), _sort_sign(replaced)))
            total = dom.sum(terms) if terms else dom.zero
            value = dom.neg(dom.div(total, self.mu.bracket(facet)))
        self._reduce_cache[exps] = value
        return value

    # Karu-Xiao sum ---------------------------------------------------------

    def degree_kx(self, m: FaceMonomial):
        self._check_degree(m)
        dom = self.dom
        support = set(m.support)
        if self.facet_pivot(m.support) is None:
            return dom.zero
        terms = []
        for facet in self.c.facets:
            if not support <= set(facet):
                continue
            num = dom.one
            den = self.mu.bracket(facet)
            for pos, j in enumerate(facet):
                sign = -1 if (pos + 1) % 2 else 1
                cols = (0,) + facet[:pos] + facet[pos + 1 :]
                x = self._signed(self.mu.bracket(cols), sign)
                b = m.exponent(j)
                if b == 0:
                    den = dom.mul(den, x)
                elif b > 1:
                    num = dom.mul(num, dom.pow(x, b - 1))
            terms.append(self._signed(dom.div(num, den), self.epsilon(facet)))
        value = dom.sum(terms)
        self._check_kx_result(value)
        return value

    def _check_kx_result(self, value) -> None:
        """The auxiliary column must cancel: no a_{i,0} survives and the
        denominator is built from facet brackets only."""
        if not isinstance(value, RatFunc) or not value:
            return
        if any(j == 0 for _, j in value.variables()):
            raise ExtendedResidue("auxiliary column variables remain in a Karu-Xiao sum")
        if not value.extra.is_constant():
            raise ExtendedResidue("unregistered denominator factor remains in a Karu-Xiao sum")
        allowed: set = set()
        for f in self.c.facets:
            allowed |= self.mu.bracket_factors(f)
        stray = [fac.label for fac in value.den if fac not in allowed]
        if stray:
            raise ExtendedResidue(f"non-facet factors {stray} remain in a Karu-Xiao sum")

    # linear extension ------------------------------------------------------

    def degree(self, m: FaceMonomial, method: str = "reduce"):
        if method == "reduce":
            return self.degree_reduce(m)
        if method == "kx":
            return self.degree_kx(m)
        raise DegreeError(f"unknown method {method!r}")

    def degree_poly(self, g: Mapping[FaceMonomial, object], method: str = "reduce"):
        """deg of sum c_m * m; coefficients are ints or base-field scalars."""
        dom = self.dom
        terms = []
        for m, coeff in g.items():
            if m.degree != self.d:
                raise DegreeError("degree_poly needs a homogeneous input of degree d")
            if isinstance(coeff, int):
                scalar = dom.from_int(coeff)
            else:
                scalar = dom.from_scalar(coeff)
            if dom.is_zero(scalar):
                continue
            value = self.degree(m, method)
            if dom.is_zero(value):
                continue
            terms.append(dom.mul(scalar, value))
        return dom.sum(terms) if terms else dom.zero

    def ell_power(self, k: int) -> dict[FaceMonomial, int]:
        """Face-supported terms of (x_1 + ... + x_n)^k with multinomial weights."""
        return ell_power(self.c, k)

    def degree_ell_times(self, k: int, m: FaceMonomial, method: str = "reduce"):
        """deg(ell^k * m) for a monomial m of degree d - k."""
        g: dict[FaceMonomial, int] = {}
        for mono, coeff in ell_power(self.c, k).items():
            prod = mono * m
            if self.c.is_face(prod.support):
                g[prod] = g.get(prod, 0) + coeff
        return self.degree_poly(g, method)


_ELL_CACHE: dict[tuple[SimplicialComplex, int], dict[FaceMonomial, int]] = {}


def ell_power(c: SimplicialComplex, k: int) -> dict[FaceMonomial, int]:
    key = (c, k)
    found = _ELL_CACHE.get(key)
    if found is None:
        found = {}
        for m in monomials_of_degree(c.vertices, c.n, k):
            if c.is_face(m.support):
                found[m] = multinomial(m.exps)
        _ELL_CACHE[key] = found
    return found


def face_monomials(c: SimplicialComplex, q: int) -> list[FaceMonomial]:
    """All degree-q monomials whose support is a face, in canonical order."""
    if q < 0:
        return []
    out = [m for m in monomials_of_degree(c.vertices, c.n, q) if c.is_face(m.support)]
    return sorted(out, key=lambda m: tuple(-e for e in m.exps))
