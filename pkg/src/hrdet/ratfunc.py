"""Rational functions with factored denominators, brackets and valuations.

Every denominator met in degree computations is a product of known
irreducible polynomials (brackets and a few minors).  A ``RatFunc`` keeps
its denominator as exponents over a registry of such factors plus a monic
residual polynomial that is normally 1, so reduction needs trial division
instead of multivariate gcds.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .fields import Field
from .poly import NotDivisible, PolyRing, SparsePoly, gcd, sqrt


class DenominatorVanishes(ZeroDivisionError):
    """Evaluation hit a zero of the denominator."""


Sampler = Callable[[random.Random, Field], list]


@dataclass(eq=False)
class Factor:
    """A registered irreducible polynomial, stored monic."""

    poly: SparsePoly
    label: str
    sampler: Sampler | None = None
    key: int = 0
    powers: list = dc_field(default_factory=list)

    def __hash__(self) -> int:
        return self.key

    def __eq__(self, other) -> bool:
        return self is other

    def __lt__(self, other: Factor) -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return self.label

    def power(self, e: int) -> SparsePoly:
        if not self.powers:
            self.powers.append(self.poly.ring.one())
        while len(self.powers) <= e:
            self.powers.append(self.powers[-1] * self.poly)
        return self.powers[e]

    def point(self, rng: random.Random, field: Field) -> list | None:
        """A random point of the hypersurface, if a sampler is known."""
        return None if self.sampler is None else self.sampler(rng, field)


class FactorRegistry:
    def __init__(self, ring: PolyRing):
        self.ring = ring
        self._by_poly: dict[SparsePoly, Factor] = {}

    def register(self, poly: SparsePoly, label: str, sampler: Sampler | None = None) -> tuple[Factor, object]:
        """Register an irreducible ``poly``; returns the factor and the scalar
        ``c`` with ``poly == c * factor.poly``."""
        if poly.is_constant():
            raise ValueError("constants are not factors")
        c = poly.lc()
        monic = poly.monic()
        found = self._by_poly.get(monic)
        if found is None:
            found = Factor(monic, label, sampler, key=len(self._by_poly) + 1)
            self._by_poly[monic] = found
        return found, c

    def lookup(self, poly: SparsePoly) -> Factor | None:
        return self._by_poly.get(poly.monic()) if poly and not poly.is_constant() else None

    def __iter__(self):
        return iter(self._by_poly.values())


@lru_cache(maxsize=None)
def registry(ring: PolyRing) -> FactorRegistry:
    return FactorRegistry(ring)


# ---------------------------------------------------------------------------
# brackets


def _dependent_columns_sampler(ring: PolyRing, rows: tuple[int, ...], columns: tuple[int, ...]) -> Sampler:
    """Points where the chosen minor vanishes: the last column on ``rows`` is
    a random combination of the others (zero when there is a single column)."""

    def sample(rng: random.Random, field: Field) -> list:
        values = [field.random(rng) for _ in range(ring.nvars)]
        coeffs = [field.random(rng) for _ in columns[:-1]]
        last = columns[-1]
        for i in rows:
            acc = field.zero
            for c, col in zip(coeffs, columns[:-1]):
                acc = field.add(acc, field.mul(c, values[ring.index(i, col)]))
            values[ring.index(i, last)] = acc
        return values

    return sample


@lru_cache(maxsize=None)
def minor_factor(ring: PolyRing, rows: tuple[int, ...], columns: tuple[int, ...]) -> tuple[Factor, object]:
    """Registered factor for the (irreducible) generic minor on rows x columns."""
    poly = ring.bracket(columns, rows)
    cols = ",".join(map(str, columns))
    label = f"[{cols}]" if rows == tuple(range(1, ring.d + 1)) else f"[{cols}]_{''.join(map(str, rows))}"
    return registry(ring).register(poly, label, _dependent_columns_sampler(ring, rows, columns))


class Bracket:
    """The d x d minor [F] of the generic coefficient matrix, F sorted."""

    def __init__(self, ring: PolyRing, columns: Iterable[int]):
        cols = tuple(sorted(columns))
        if len(cols) != ring.d or len(set(cols)) != ring.d:
            raise ValueError(f"bracket needs {ring.d} distinct columns")
        self.ring = ring
        self.columns = cols
        self.factor, sign = minor_factor(ring, tuple(range(1, ring.d + 1)), cols)
        if sign != 1:
            raise AssertionError("sorted brackets are monic")

    @property
    def poly(self) -> SparsePoly:
        return self.factor.poly

    def ratfunc(self) -> RatFunc:
        return RatFunc.from_factor(self.factor)

    def __repr__(self) -> str:
        return self.factor.label

    def __eq__(self, other) -> bool:
        return isinstance(other, Bracket) and other.ring == self.ring and other.columns == self.columns

    def __hash__(self) -> int:
        return hash(self.columns)


@lru_cache(maxsize=None)
def variable_factor(ring: PolyRing, i: int, j: int) -> Factor:
    k = ring.index(i, j)

    def sample(rng: random.Random, field: Field) -> list:
        values = [field.random(rng) for _ in range(ring.nvars)]
        values[k] = field.zero
        return values

    return registry(ring).register(ring.var(i, j), f"a_{i}_{j}", sample)[0]


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """num / (prod factor^e * extra) with gcd(num, denominator) = 1."""

    __slots__ = ("ring", "num", "den", "extra")

    def __init__(self, ring: PolyRing, num: SparsePoly, den: dict[Factor, int] | None = None,
                 extra: SparsePoly | None = None, *, reduced: bool = False):
        self.ring = ring
        self.num = num
        self.den = {f: e for f, e in (den or {}).items() if e}
        self.extra = ring.one() if extra is None else extra
        if not num:
            self.den = {}
            self.extra = ring.one()
        elif not reduced:
            self._reduce()

    # construction ----------------------------------------------------------

    @classmethod
    def from_poly(cls, p: SparsePoly) -> RatFunc:
        return cls(p.ring, p, reduced=True)

    @classmethod
    def from_factor(cls, f: Factor, e: int = 1) -> RatFunc:
        ring = f.poly.ring
        if e >= 0:
            return cls(ring, f.power(e), reduced=True)
        return cls(ring, ring.one(), {f: -e}, reduced=True)

    @classmethod
    def const(cls, ring: PolyRing, c) -> RatFunc:
        return cls(ring, ring.const(c), reduced=True)

    @classmethod
    def zero(cls, ring: PolyRing) -> RatFunc:
        return cls(ring, ring.zero(), reduced=True)

    @classmethod
    def one(cls, ring: PolyRing) -> RatFunc:
        return cls(ring, ring.one(), reduced=True)

    # normalization -------------------------------------------------------

    def _reduce(self) -> None:
        num, den = _cancel(self.num, self.den)
        extra = self.extra
        if not extra.is_constant():
            g = gcd(num, extra)
            if not g.is_constant():
                num = num.exact_div(g)
                extra = extra.exact_div(g)
        if not extra.is_constant() or extra.lc() != self.ring.field.one:
            c = extra.lc()
            extra = extra.monic()
            num = num.scale(self.ring.field.inv(c))
        self.num = num
        self.den = {f: e for f, e in den.items() if e}
        self.extra = extra

    def denominator(self) -> SparsePoly:
        result = self.extra
        for f, e in sorted(self.den.items()):
            result = result * f.power(e)
        return result

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return not self.den and self.extra.is_constant()

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value()

    def variables(self) -> set[tuple[int, int]]:
        out = set(self.num.variables()) | self.extra.variables()
        for f in self.den:
            out |= f.poly.variables()
        return out

    # arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, SparsePoly):
            return RatFunc.from_poly(other)
        if isinstance(other, int):
            return RatFunc.const(self.ring, self.ring.field.from_int(other))
        return NotImplemented

    def __add__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc.sum([self, other])

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(self.ring, -self.num, self.den, self.extra, reduced=True)

    def __sub__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc.sum([self, -other])

    def __rsub__(self, other) -> RatFunc:
        return (-self) + other

    def __mul__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RatFunc.zero(self.ring)
        a_num, b_num = self.num, other.num
        den = dict(self.den)
        # cancel each side's numerator against the other's denominator first
        a_num, rest_b = _cancel(a_num, other.den)
        b_num, rest_a = _cancel(b_num, self.den)
        den = dict(rest_a)
        for f, e in rest_b.items():
            den[f] = den.get(f, 0) + e
        extra = self.extra * other.extra
        return RatFunc(self.ring, a_num * b_num, den, extra,
                       reduced=extra.is_constant())

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        ring = self.ring
        num = self.extra
        for f, e in self.den.items():
            num = num * f.power(e)
        known = registry(ring).lookup(self.num)
        if known is not None:
            c = self.num.lc()
            return RatFunc(ring, num.scale(ring.field.inv(c)), {known: 1}, reduced=True)
        den, rest = split_known_factors(self.num)
        c = rest.lc()
        rest = rest.monic()
        num = num.scale(ring.field.inv(c))
        return RatFunc(ring, num, den, rest, reduced=rest.is_constant())

    def __truediv__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> RatFunc:
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inverse() ** (-k)
        num = self.num ** k
        den = {f: e * k for f, e in self.den.items()}
        return RatFunc(self.ring, num, den, self.extra ** k, reduced=True)

    def scale(self, c) -> RatFunc:
        return RatFunc(self.ring, self.num.scale(c), self.den, self.extra, reduced=True)

    @staticmethod
    def sum(items: Iterable[RatFunc], ring: PolyRing | None = None) -> RatFunc:
        """Sum of fractions.

        Numerators over an identical denominator are added first; the groups
        are then combined pairwise, reducing after every step so cancellation
        keeps intermediate numerators small."""
        items = list(items)
        if ring is None:
            if not items:
                raise ValueError("empty sum needs a ring")
            ring = items[0].ring
        groups: dict[tuple, RatFunc] = {}
        for x in items:
            if not x.num:
                continue
            key = (frozenset(x.den.items()), x.extra)
            found = groups.get(key)
            groups[key] = x if found is None else RatFunc(ring, found.num + x.num, x.den, x.extra)
        level = [g for g in groups.values() if g.num]
        if not level:
            return RatFunc.zero(ring)
        level.sort(key=lambda x: len(x.num))
        while len(level) > 1:
            nxt = [RatFunc._sum_over_common(level[k : k + 2], ring) for k in range(0, len(level) - 1, 2)]
            if len(level) % 2:
                nxt.append(level[-1])
            level = [x for x in nxt if x.num] or [RatFunc.zero(ring)]
        return level[0]

    @staticmethod
    def _sum_over_common(items: list[RatFunc], ring: PolyRing) -> RatFunc:
        common: dict[Factor, int] = {}
        extra = ring.one()
        for x in items:
            for f, e in x.den.items():
                if e > common.get(f, 0):
                    common[f] = e
            if not x.extra.is_constant():
                extra = extra * x.extra.exact_div(gcd(extra, x.extra))
        total = ring.zero()
        for x in items:
            cof = extra if x.extra.is_constant() else extra.exact_div(x.extra)
            for f, e in common.items():
                k = e - x.den.get(f, 0)
                if k:
                    cof = cof * f.power(k)
            total = total + x.num * cof
        return RatFunc(ring, total, common, extra)

    # comparisons ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (
            self.num == other.num
            and self.den == other.den
            and self.extra == other.extra
        )

    def __hash__(self) -> int:
        return hash((self.num, frozenset(self.den.items()), self.extra))

    # evaluation ----------------------------------------------------------

    def evaluate(self, point: Sequence, field: Field | None = None):
        field = field or self.ring.field
        den = self.extra.evaluate(point, field) if not self.extra.is_constant() else field.one
        for f, e in self.den.items():
            den = field.mul(den, field.pow(f.poly.evaluate(point, field), e))
        if field.is_zero(den):
            raise DenominatorVanishes("denominator vanishes at the point")
        return field.div(self.num.evaluate(point, field), den)

    # text ------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.num:
            return "0"
        parts = [f"({self.num})"] if len(self.num) > 1 else [str(self.num)]
        dens = []
        for f, e in sorted(self.den.items()):
            dens.append(f"({f.poly})" + (f"^{e}" if e > 1 else ""))
        if not self.extra.is_constant():
            dens.append(f"({self.extra})")
        if dens:
            return parts[0] + " / (" + "*".join(dens) + ")"
        return parts[0]

    def factored(self) -> str:
        """Denominator shown by factor labels."""
        if not self.num:
            return "0"
        dens = [f.label + (f"^{e}" if e > 1 else "") for f, e in sorted(self.den.items())]
        if not self.extra.is_constant():
            dens.append(f"({self.extra})")
        num = f"({self.num})" if len(self.num) > 1 else str(self.num)
        return num if not dens else f"{num} / ({'*'.join(dens)})"

    def __repr__(self) -> str:
        return f"RatFunc({self.factored()})"


_PRECHECK_RNG = random.Random(0x5EED)


def try_divide(num: SparsePoly, f: Factor) -> SparsePoly | None:
    """num / f if f divides num, else None.  A nonzero value of ``num`` at a
    point of the hypersurface of ``f`` rules divisibility out cheaply."""
    if num.is_constant() or len(num) < len(f.poly):
        return None
    if len(num) > 64 and not _divides_at_random_points(f, num, _PRECHECK_RNG, _sampling(num.ring.field), tries=1):
        return None
    try:
        return num.exact_div(f.poly)
    except NotDivisible:
        return None


def _sampling(field: Field) -> Field:
    from .fields import sampling_field

    return sampling_field(field)


def _cancel(num: SparsePoly, den: dict[Factor, int]) -> tuple[SparsePoly, dict[Factor, int]]:
    den = dict(den)
    for f in sorted(den):
        while den[f]:
            q = try_divide(num, f)
            if q is None:
                break
            num = q
            den[f] -= 1
    return num, {f: e for f, e in den.items() if e}


def split_known_factors(p: SparsePoly) -> tuple[dict[Factor, int], SparsePoly]:
    """Pull registered factors out of ``p``; returns exponents and cofactor."""
    out: dict[Factor, int] = {}
    rest = p
    if p.is_constant():
        return out, rest
    used = p.variables()
    for f in registry(p.ring):
        if len(f.poly) > len(rest) or not f.poly.variables() <= used:
            continue
        while True:
            q = try_divide(rest, f)
            if q is None:
                break
            rest = q
            out[f] = out.get(f, 0) + 1
    return out, rest


# ---------------------------------------------------------------------------
# valuations, squares, determinants


def _divides_at_random_points(f: Factor, p: SparsePoly, rng: random.Random, field: Field, tries: int = 2) -> bool:
    """False only when ``f`` provably does not divide ``p``: ``p`` is nonzero
    at a point of the hypersurface of ``f``."""
    if f.sampler is None:
        return True
    for _ in range(tries):
        point = f.point(rng, field)
        try:
            value = p.evaluate(point, field)
        except ZeroDivisionError:
            return True
        if not field.is_zero(value):
            return False
    return True


def poly_order(f: Factor, p: SparsePoly) -> int:
    """Largest m with f^m dividing the nonzero polynomial p."""
    if not p:
        raise ValueError("order of the zero polynomial")
    m = 0
    while True:
        q = try_divide(p, f)
        if q is None:
            return m
        p = q
        m += 1


def ord_at(p: Bracket | Factor, f: RatFunc) -> int:
    """Order of vanishing of ``f`` along the irreducible hypersurface ``p``."""
    factor = p.factor if isinstance(p, Bracket) else p
    if not f.num:
        raise ValueError("ord of zero is undefined")
    result = poly_order(factor, f.num) - f.den.get(factor, 0)
    if not f.extra.is_constant():
        result -= poly_order(factor, f.extra)
    return result


@dataclass(frozen=True)
class SquareClass:
    is_square: bool
    scalar: object | None


def is_square_mod_scalars(f: RatFunc) -> SquareClass:
    """Decide whether f = lambda * s^2 with lambda a scalar; report lambda's class."""
    if not f.num:
        raise ValueError("zero has no square class")
    field = f.ring.field
    if any(e % 2 for e in f.den.values()):
        return SquareClass(False, None)
    c = f.num.lc()
    lam = field.square_class(c)
    if sqrt(f.num.monic()) is None:
        return SquareClass(False, None)
    if not f.extra.is_constant() and sqrt(f.extra) is None:
        return SquareClass(False, None)
    return SquareClass(True, lam)


def bareiss_det(matrix: list[list[SparsePoly]]) -> SparsePoly:
    """Fraction-free determinant of a square polynomial matrix."""
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise ValueError("matrix is not square")
    if size == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    m = [list(row) for row in matrix]
    sign = 1
    prev = ring.one()
    for k in range(size - 1):
        if not m[k][k]:
            swap = next((r for r in range(k + 1, size) if m[r][k]), None)
            if swap is None:
                return ring.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    result = m[size - 1][size - 1]
    return -result if sign < 0 else result


LAPLACE_LIMIT = 4


def det(matrix: list[list[RatFunc]]) -> RatFunc:
    """Exact determinant.

    Small matrices use cofactor expansion in RatFunc arithmetic, which
    cancels bracket factors as it goes; larger ones clear denominators row
    by row, run Bareiss elimination and divide back."""
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise ValueError("matrix is not square")
    if size == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    if size <= LAPLACE_LIMIT:
        return _laplace(matrix, tuple(range(size)), 0, ring, {})
    total_den: dict[Factor, int] = {}
    total_extra = ring.one()
    cleared = []
    for row in matrix:
        common: dict[Factor, int] = {}
        extra = ring.one()
        for x in row:
            for f, e in x.den.items():
                common[f] = max(common.get(f, 0), e)
            if not x.extra.is_constant():
                extra = extra * x.extra.exact_div(gcd(extra, x.extra))
        new_row = []
        for x in row:
            if not x.num:
                new_row.append(ring.zero())
                continue
            cof = extra if x.extra.is_constant() else extra.exact_div(x.extra)
            for f, e in common.items():
                k = e - x.den.get(f, 0)
                if k:
                    cof = cof * f.power(k)
            new_row.append(x.num * cof)
        cleared.append(new_row)
        for f, e in common.items():
            total_den[f] = total_den.get(f, 0) + e
        total_extra = total_extra * extra
    value = bareiss_det(cleared)
    return RatFunc(ring, value, total_den, total_extra)


def _laplace(matrix, cols: tuple[int, ...], row: int, ring: PolyRing, memo: dict) -> RatFunc:
    """Cofactor expansion along successive rows; minors memoized by columns."""
    if not cols:
        return RatFunc.one(ring)
    found = memo.get(cols)
    if found is not None:
        return found
    terms = []
    for k, j in enumerate(cols):
        entry = matrix[row][j]
        if not entry.num:
            continue
        minor = _laplace(matrix, cols[:k] + cols[k + 1 :], row + 1, ring, memo)
        if not minor.num:
            continue
        value = entry * minor
        terms.append(-value if k % 2 else value)
    result = RatFunc.sum(terms, ring)
    memo[cols] = result
    return result


class FunctionField:
    """Domain adaptor so generic algorithms can run over RatFunc values."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.field = ring.field
        self.zero = RatFunc.zero(ring)
        self.one = RatFunc.one(ring)

    def from_int(self, n: int) -> RatFunc:
        return RatFunc.const(self.ring, self.field.from_int(n))

    def from_scalar(self, c) -> RatFunc:
        return RatFunc.const(self.ring, c)

    def add(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return a + b

    def sub(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return a - b

    def neg(self, a: RatFunc) -> RatFunc:
        return -a

    def mul(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return a * b

    def div(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return a / b

    def pow(self, a: RatFunc, k: int) -> RatFunc:
        return a ** k

    def is_zero(self, a: RatFunc) -> bool:
        return not a.num

    def sum(self, items: Iterable[RatFunc]) -> RatFunc:
        return RatFunc.sum(items, self.ring)


def eval_hom(f: SparsePoly | RatFunc, assignment: dict[int, RatFunc]) -> RatFunc:
    """Apply the homomorphism a_k -> assignment[k] (identity on missing k)."""
    ring = f.ring
    dom = FunctionField(ring)
    values = {}
    for k in range(ring.nvars):
        if k in assignment:
            values[k] = assignment[k]
        else:
            i, j = ring.var_id(k)
            values[k] = RatFunc.from_poly(ring.var(i, j))
    if isinstance(f, SparsePoly):
        return f.substitute(values, dom)
    num = f.num.substitute(values, dom)
    den = f.extra.substitute(values, dom)
    for fac, e in f.den.items():
        den = den * fac.poly.substitute(values, dom) ** e
    if not den.num:
        raise DenominatorVanishes("denominator maps to zero")
    return num / den
