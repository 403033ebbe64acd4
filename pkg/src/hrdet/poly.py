"""Sparse multivariate polynomials in the variables a_{i,j}.

A ring is fixed by its coefficient field, the number of rows ``d`` and the
largest column ``n``; columns run over 0..n so that the auxiliary column 0
lives in the same ring as the generic coefficients.

Monomials are packed into a single Python int.  Each variable owns an 8-bit
field (7 exponent bits and a guard bit) and the total degree sits above all
of them, so integer comparison of packed monomials is the graded
lexicographic order with a_{1,0} > a_{1,1} > ... > a_{d,n}.  Multiplying
monomials is integer addition and divisibility is a single masked
subtraction.
"""

from __future__ import annotations

import heapq
import re
from collections.abc import Iterable, Iterator, Mapping
from contextlib import contextmanager
from functools import lru_cache

from .fields import QQ, Field, PrimeField, Rationals

WIDTH = 8
MAX_EXP = (1 << (WIDTH - 1)) - 1


class NotDivisible(ArithmeticError):
    pass


class TermBudgetExceeded(ArithmeticError):
    """A product would exceed the active term ceiling."""


_term_ceiling: int | None = None


@contextmanager
def term_budget(limit: int | None) -> Iterator[None]:
    """Cap the number of terms any polynomial product may produce."""
    global _term_ceiling
    saved = _term_ceiling
    _term_ceiling = limit
    try:
        yield
    finally:
        _term_ceiling = saved


def active_term_budget() -> int | None:
    return _term_ceiling


class ExponentOverflow(OverflowError):
    pass


class PolyRing:
    """Polynomial ring k[a_{i,j} : 1 <= i <= d, 0 <= j <= n]."""

    def __init__(self, field: Field, d: int, n: int):
        if d < 1 or n < 1:
            raise ValueError("need d >= 1 and n >= 1")
        self.field = field
        self.d = d
        self.n = n
        self.nvars = d * (n + 1)
        self.deg_shift = self.nvars * WIDTH
        self.guard = sum(1 << (k * WIDTH + WIDTH - 1) for k in range(self.nvars))
        self.var_mask = (1 << self.deg_shift) - 1
        self._fast = isinstance(field, (Rationals, PrimeField))
        self._mod = field.p if isinstance(field, PrimeField) else 0

    def __repr__(self) -> str:
        return f"PolyRing({self.field!r}, d={self.d}, n={self.n})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.d == other.d
            and self.n == other.n
        )

    def __hash__(self) -> int:
        return hash((self.field, self.d, self.n))

    # variables ---------------------------------------------------------

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.d and 0 <= j <= self.n):
            raise IndexError(f"a_{i}_{j} is not a variable of {self!r}")
        return (i - 1) * (self.n + 1) + j

    def var_id(self, k: int) -> tuple[int, int]:
        return k // (self.n + 1) + 1, k % (self.n + 1)

    def shift(self, k: int) -> int:
        return (self.nvars - 1 - k) * WIDTH

    def mono(self, exps: Mapping[int, int]) -> int:
        """Pack ``{variable index: exponent}``."""
        m = 0
        total = 0
        for k, e in exps.items():
            if e < 0 or e > MAX_EXP:
                raise ExponentOverflow(f"exponent {e} out of range")
            if e:
                m |= e << self.shift(k)
                total += e
        return m | (total << self.deg_shift)

    def unpack(self, m: int) -> dict[int, int]:
        exps = {}
        body = m & self.var_mask
        k = self.nvars - 1
        while body:
            e = body & MAX_EXP
            if e:
                exps[k] = e
            body >>= WIDTH
            k -= 1
        return exps

    def mono_degree(self, m: int) -> int:
        return m >> self.deg_shift

    def divides(self, a: int, b: int) -> bool:
        """Whether monomial ``a`` divides monomial ``b``."""
        return ((b | self.guard) - a) & self.guard == self.guard

    def check(self, m: int) -> int:
        if m & self.guard:
            raise ExponentOverflow("exponent exceeded the packed width")
        return m

    # constructors ------------------------------------------------------

    def zero(self) -> SparsePoly:
        return SparsePoly(self, {})

    def one(self) -> SparsePoly:
        return self.const(self.field.one)

    def const(self, c) -> SparsePoly:
        if self.field.is_zero(c):
            return self.zero()
        return SparsePoly(self, {0: c})

    def var(self, i: int, j: int) -> SparsePoly:
        return SparsePoly(self, {self.mono({self.index(i, j): 1}): self.field.one})

    def bracket(self, columns: Iterable[int], rows: Iterable[int] | None = None) -> SparsePoly:
        """Determinant of the minor of (a_{i,j}) on ``rows`` x ``columns``.

        Column order is taken as given; rows default to 1..d.
        """
        columns = tuple(columns)
        rows = tuple(range(1, self.d + 1)) if rows is None else tuple(rows)
        return _bracket(self, rows, columns)

    def parse(self, text: str) -> SparsePoly:
        return parse_poly(self, text)


@lru_cache(maxsize=None)
def _bracket(ring: PolyRing, rows: tuple[int, ...], columns: tuple[int, ...]) -> SparsePoly:
    if len(rows) != len(columns):
        raise ValueError("minor must be square")
    if len(set(columns)) < len(columns):
        return ring.zero()
    if not rows:
        return ring.one()
    # Laplace expansion along the first row
    result = ring.zero()
    first = rows[0]
    for pos, col in enumerate(columns):
        minor = _bracket(ring, rows[1:], columns[:pos] + columns[pos + 1 :])
        term = ring.var(first, col) * minor
        result = result - term if pos % 2 else result + term
    return result


class SparsePoly:
    """Immutable sparse polynomial; ``terms`` maps packed monomial to coefficient."""

    __slots__ = ("ring", "terms", "_lead", "_hash", "_unpacked")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lead = None
        self._hash = None
        self._unpacked = None

    # basic queries -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        return self.terms.get(0, self.ring.field.zero)

    def leading(self) -> tuple[int, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lead is None:
            m = max(self.terms)
            self._lead = (m, self.terms[m])
        return self._lead

    def lc(self):
        return self.leading()[1]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return self.ring.mono_degree(self.leading()[0])

    def variables(self) -> set[tuple[int, int]]:
        seen = 0
        for m in self.terms:
            seen |= m
        ring = self.ring
        return {ring.var_id(k) for k in ring.unpack(seen & ring.var_mask)}

    def degree_in(self, k: int) -> int:
        sh = self.ring.shift(k)
        return max(((m >> sh) & MAX_EXP for m in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(self.ring.field.from_int(other))
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # arithmetic --------------------------------------------------------

    def _coerce(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            if other.ring != self.ring:
                raise ValueError("polynomials over different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(self.ring.field.from_int(other))
        return NotImplemented

    def __add__(self, other) -> SparsePoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _combine(self.ring, self.terms, other.terms, 1)

    __radd__ = __add__

    def __sub__(self, other) -> SparsePoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _combine(self.ring, self.terms, other.terms, -1)

    def __rsub__(self, other) -> SparsePoly:
        return (-self) + other

    def __neg__(self) -> SparsePoly:
        f = self.ring.field
        return SparsePoly(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other) -> SparsePoly:
        if not isinstance(other, SparsePoly):
            if isinstance(other, int):
                return self.scale(self.ring.field.from_int(other))
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError("polynomials over different rings")
        return _multiply(self.ring, self.terms, other.terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> SparsePoly:
        f = self.ring.field
        if f.is_zero(c):
            return self.ring.zero()
        if c == f.one:
            return self
        return SparsePoly(self.ring, {m: f.mul(a, c) for m, a in self.terms.items()})

    def mul_mono(self, m: int, c=None) -> SparsePoly:
        ring = self.ring
        f = ring.field
        if c is None:
            c = f.one
        out = {}
        for mm, a in self.terms.items():
            out[ring.check(mm + m)] = f.mul(a, c)
        return SparsePoly(ring, out)

    def monic(self) -> SparsePoly:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    # division -------------------------------------------------------------

    def exact_div(self, other: SparsePoly) -> SparsePoly:
        """The quotient ``q`` with ``self == other * q``; raises NotDivisible."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        return _exact_div(self.ring, self.terms, other)

    def divisible_by(self, other: SparsePoly) -> bool:
        try:
            self.exact_div(other)
        except NotDivisible:
            return False
        return True

    def __truediv__(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            return self.exact_div(other)
        return self.scale(self.ring.field.inv(self.ring.field.from_int(other)))

    # evaluation -------------------------------------------------------------

    def unpacked(self, field: Field | None = None) -> list[tuple[object, list[tuple[int, int]]]]:
        """Terms as (coefficient, [(variable, exponent)]), coefficients mapped
        into ``field``; cached per field."""
        ring = self.ring
        field = field or ring.field
        if self._unpacked is None:
            self._unpacked = {}
        found = self._unpacked.get(field)
        if found is None:
            if field == ring.field:
                found = [(c, list(ring.unpack(m).items())) for m, c in self.terms.items()]
            else:
                found = [(field.convert(c, ring.field), list(ring.unpack(m).items()))
                         for m, c in self.terms.items()]
            self._unpacked[field] = found
        return found

    def evaluate(self, values: Mapping[int, object] | list, field: Field | None = None):
        """Value at a point given by variable index -> field element."""
        field = field or self.ring.field
        if isinstance(field, PrimeField):
            return self._evaluate_mod(values, field)
        total = field.zero
        powers: dict[tuple[int, int], object] = {}
        for c, exps in self.unpacked(field):
            term = c
            for k, e in exps:
                key = (k, e)
                p = powers.get(key)
                if p is None:
                    p = powers[key] = field.pow(values[k], e)
                term = field.mul(term, p)
            total = field.add(total, term)
        return total

    def _evaluate_mod(self, values, field: PrimeField) -> int:
        p = field.p
        total = 0
        powers: dict[tuple[int, int], int] = {}
        for c, exps in self.unpacked(field):
            term = c
            for key in exps:
                q = powers.get(key)
                if q is None:
                    q = powers[key] = pow(values[key[0]], key[1], p)
                term = term * q % p
            total += term
        return total % p

    def substitute(self, values: Mapping[int, object], domain):
        """Image under the homomorphism sending variable k to ``values[k]``.

        ``domain`` supplies ``zero``, ``add``, ``mul``, ``pow`` and
        ``from_scalar``; variables missing from ``values`` are not allowed.
        """
        total = domain.zero
        powers: dict[tuple[int, int], object] = {}
        for c, exps in self.unpacked():
            term = domain.from_scalar(c)
            for k, e in exps:
                key = (k, e)
                p = powers.get(key)
                if p is None:
                    p = powers[key] = domain.pow(values[k], e)
                term = domain.mul(term, p)
            total = domain.add(total, term)
        return total

    def rename(self, mapping: Mapping[int, int]) -> SparsePoly:
        """Relabel variables by index; unmapped variables are kept."""
        ring = self.ring
        out = {}
        f = ring.field
        for m, c in self.terms.items():
            exps = ring.unpack(m)
            new = {}
            for k, e in exps.items():
                k2 = mapping.get(k, k)
                new[k2] = new.get(k2, 0) + e
            mm = ring.mono(new)
            out[mm] = f.add(out.get(mm, f.zero), c)
        return SparsePoly(ring, {m: c for m, c in out.items() if not f.is_zero(c)})

    # text -------------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"SparsePoly({format_poly(self)!r})"


def _combine(ring: PolyRing, ta: dict, tb: dict, sign: int) -> SparsePoly:
    f = ring.field
    if ring._fast:
        out = dict(ta)
        get = out.get
        if sign == 1:
            for m, c in tb.items():
                out[m] = get(m, 0) + c
        else:
            for m, c in tb.items():
                out[m] = get(m, 0) - c
        if ring._mod:
            p = ring._mod
            return SparsePoly(ring, {m: c % p for m, c in out.items() if c % p})
        return SparsePoly(ring, {m: c for m, c in out.items() if c})
    out = dict(ta)
    for m, c in tb.items():
        v = f.add(out.get(m, f.zero), c if sign == 1 else f.neg(c))
        if f.is_zero(v):
            out.pop(m, None)
        else:
            out[m] = v
    return SparsePoly(ring, out)


def _multiply(ring: PolyRing, ta: dict, tb: dict) -> SparsePoly:
    if not ta or not tb:
        return ring.zero()
    if len(ta) < len(tb):
        ta, tb = tb, ta
    ceiling = _term_ceiling
    if ceiling is not None and len(ta) * len(tb) > 64 * ceiling:
        raise TermBudgetExceeded(f"product of {len(ta)} x {len(tb)} terms exceeds the budget of {ceiling}")
    f = ring.field
    out: dict = {}
    get = out.get
    if ring._fast:
        items_b = list(tb.items())
        for ma, ca in ta.items():
            for mb, cb in items_b:
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
        if ring._mod:
            p = ring._mod
            res = {m: c % p for m, c in out.items() if c % p}
        else:
            res = {m: c for m, c in out.items() if c}
    else:
        zero = f.zero
        for ma, ca in ta.items():
            for mb, cb in tb.items():
                m = ma + mb
                out[m] = f.add(get(m, zero), f.mul(ca, cb))
        res = {m: c for m, c in out.items() if not f.is_zero(c)}
    if ceiling is not None and len(res) > ceiling:
        raise TermBudgetExceeded(f"product has {len(res)} terms, over the budget of {ceiling}")
    guard = ring.guard
    for m in res:
        if m & guard:
            raise ExponentOverflow("exponent exceeded the packed width")
    return SparsePoly(ring, res)


def _exact_div(ring: PolyRing, ta: dict, b: SparsePoly) -> SparsePoly:
    if not ta:
        return ring.zero()
    f = ring.field
    lb, lcb = b.leading()
    if len(b.terms) == 1:
        out = {}
        inv = f.inv(lcb)
        for m, c in ta.items():
            if not ring.divides(lb, m):
                raise NotDivisible("monomial divisor does not divide")
            out[m - lb] = f.mul(c, inv)
        return SparsePoly(ring, out)
    rest = [(m, c) for m, c in b.terms.items() if m != lb]
    rem = dict(ta)
    heap = [-m for m in rem]
    heapq.heapify(heap)
    quotient = {}
    fast = ring._fast
    mod = ring._mod
    unit = lcb in (1, -1) and isinstance(f, Rationals)
    inv = None if unit else f.inv(lcb)
    while heap:
        m = -heapq.heappop(heap)
        c = rem.pop(m, None)
        if c is None:
            continue
        if mod:
            c %= mod
        if f.is_zero(c):
            continue
        # skip duplicate heap entries of the same monomial
        while heap and -heap[0] == m:
            heapq.heappop(heap)
        if not ring.divides(lb, m):
            raise NotDivisible("leading monomial does not divide")
        qm = m - lb
        if unit:
            qc = c * lcb
        elif fast and not mod and isinstance(c, int) and isinstance(lcb, int):
            qc, r = divmod(c, lcb)
            if r:
                qc = f.div(c, lcb)
        else:
            qc = f.mul(c, inv)
        quotient[qm] = qc
        if fast:
            for mb, cb in rest:
                mm = qm + mb
                old = rem.get(mm)
                if old is None:
                    rem[mm] = -qc * cb
                    heapq.heappush(heap, -mm)
                else:
                    rem[mm] = old - qc * cb
        else:
            for mb, cb in rest:
                mm = qm + mb
                old = rem.get(mm)
                if old is None:
                    rem[mm] = f.neg(f.mul(qc, cb))
                    heapq.heappush(heap, -mm)
                else:
                    rem[mm] = f.sub(old, f.mul(qc, cb))
    if mod:
        quotient = {m: c % mod for m, c in quotient.items() if c % mod}
    elif isinstance(f, Rationals):
        quotient = {m: QQ.normalize(c) for m, c in quotient.items()}
    return SparsePoly(ring, quotient)


# ---------------------------------------------------------------------------
# recursive (univariate over multivariate) helpers for gcd and square roots


def main_variable(*polys: SparsePoly) -> int | None:
    """Smallest variable index (largest variable) occurring in any input."""
    seen = 0
    for p in polys:
        for m in p.terms:
            seen |= m
    seen &= polys[0].ring.var_mask
    if not seen:
        return None
    ring = polys[0].ring
    top = seen.bit_length() - 1
    return ring.nvars - 1 - top // WIDTH


def coefficients_in(p: SparsePoly, k: int) -> dict[int, SparsePoly]:
    """Write ``p`` as sum of ``c_e * v^e`` for variable index ``k``."""
    ring = p.ring
    sh = ring.shift(k)
    out: dict[int, dict] = {}
    for m, c in p.terms.items():
        e = (m >> sh) & MAX_EXP
        rest = m - (e << sh) - (e << ring.deg_shift)
        out.setdefault(e, {})[rest] = c
    return {e: SparsePoly(ring, t) for e, t in out.items()}


def from_coefficients(ring: PolyRing, k: int, coeffs: Mapping[int, SparsePoly]) -> SparsePoly:
    result = ring.zero()
    for e, c in coeffs.items():
        if c:
            result = result + c.mul_mono(ring.mono({k: e}))
    return result


def _uni_degree(c: dict[int, SparsePoly]) -> int:
    return max((e for e, v in c.items() if v), default=-1)


def _pseudo_remainder(a: dict[int, SparsePoly], b: dict[int, SparsePoly], ring: PolyRing) -> dict[int, SparsePoly]:
    da, db = _uni_degree(a), _uni_degree(b)
    lb = b[db]
    r = {e: v for e, v in a.items() if v}
    dr = da
    while dr >= db and r:
        lr = r[dr]
        shift = dr - db
        new = {e: v * lb for e, v in r.items() if e != dr}
        for e, v in b.items():
            if e == db or not v:
                continue
            ee = e + shift
            new[ee] = new.get(ee, ring.zero()) - lr * v
        r = {e: v for e, v in new.items() if v}
        dr = _uni_degree(r)
    return r


def content(p: SparsePoly, k: int) -> SparsePoly:
    coeffs = [c for c in coefficients_in(p, k).values() if c]
    g = p.ring.zero()
    for c in sorted(coeffs, key=len):
        g = gcd(g, c)
        if g.is_constant() and g:
            return g.ring.one()
    return g


def gcd(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """Greatest common divisor with leading coefficient 1 (primitive PRS)."""
    ring = a.ring
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return ring.one()
    if a == b:
        return a.monic()
    for x, y in ((a, b), (b, a)):
        if len(y) <= len(x):
            try:
                x.exact_div(y)
                return y.monic()
            except NotDivisible:
                pass
    k = main_variable(a, b)
    da, db = a.degree_in(k), b.degree_in(k)
    if da <= 0 and db <= 0:
        return ring.one()
    if da <= 0:
        return gcd(a, content(b, k))
    if db <= 0:
        return gcd(content(a, k), b)
    ca, cb = content(a, k), content(b, k)
    pa, pb = a.exact_div(ca), b.exact_div(cb)
    g_content = gcd(ca, cb)
    ua, ub = coefficients_in(pa, k), coefficients_in(pb, k)
    if _uni_degree(ua) < _uni_degree(ub):
        ua, ub = ub, ua
    while True:
        r = _pseudo_remainder(ua, ub, ring)
        if not r:
            break
        if _uni_degree(r) == 0:
            return g_content.monic()
        rp = from_coefficients(ring, k, r)
        rp = rp.exact_div(content(rp, k))
        ua, ub = ub, coefficients_in(rp, k)
    g = from_coefficients(ring, k, ub)
    g = g.exact_div(content(g, k))
    return (g * g_content).monic()


def sqrt(p: SparsePoly) -> SparsePoly | None:
    """An exact square root of ``p`` (up to sign), or None if not a square."""
    ring = p.ring
    f = ring.field
    if not p:
        return p
    if f.characteristic == 2:
        out = {}
        for m, c in p.terms.items():
            if m & ring.var_mask & _odd_mask(ring):
                return None
            r = f.sqrt(c)
            if r is None:
                return None
            out[m >> 1] = r
        return SparsePoly(ring, out)
    k = main_variable(p)
    if k is None:
        r = f.sqrt(p.constant_value())
        return None if r is None else ring.const(r)
    coeffs = coefficients_in(p, k)
    top = _uni_degree(coeffs)
    if top % 2:
        return None
    half = top // 2
    s_top = sqrt(coeffs[top])
    if s_top is None:
        return None
    two_s = s_top * 2
    root = {half: s_top}
    # solve for lower coefficients from the top down
    for j in range(half - 1, -1, -1):
        target = half + j
        acc = coeffs.get(target, ring.zero())
        for u, su in root.items():
            for v, sv in root.items():
                if u + v == target:
                    acc = acc - su * sv
        try:
            root[j] = acc.exact_div(two_s)
        except NotDivisible:
            return None
    candidate = from_coefficients(ring, k, root)
    return candidate if candidate * candidate == p else None


@lru_cache(maxsize=None)
def _odd_mask(ring: PolyRing) -> int:
    return sum(1 << (k * WIDTH) for k in range(ring.nvars))


def is_square(p: SparsePoly) -> bool:
    return sqrt(p) is not None


# ---------------------------------------------------------------------------
# canonical text


def format_poly(p: SparsePoly) -> str:
    ring = p.ring
    f = ring.field
    if not p.terms:
        return "0"
    pieces = []
    for m in sorted(p.terms, reverse=True):
        c = p.terms[m]
        exps = ring.unpack(m)
        factors = []
        for k in sorted(exps):
            i, j = ring.var_id(k)
            e = exps[k]
            factors.append(f"a_{i}_{j}" if e == 1 else f"a_{i}_{j}^{e}")
        text = f.format(c)
        negative = isinstance(f, Rationals) and c < 0
        if negative:
            text = f.format(-c)
        if factors:
            body = "*".join(factors) if text == "1" else "*".join([text] + factors)
        else:
            body = text
        pieces.append(("-" if negative else "+", body))
    sign, body = pieces[0]
    out = [("-" if sign == "-" else "") + body]
    for sign, body in pieces[1:]:
        out.append(f" {sign} {body}")
    return "".join(out)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_VAR = re.compile(r"a_(\d+)_(\d+)(?:\^(\d+))?$")


def parse_poly(ring: PolyRing, text: str) -> SparsePoly:
    f = ring.field
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    if text[0] not in "+-":
        text = "+" + text
    parts = _TERM_SPLIT.split(text)[1:]
    terms: dict = {}
    for sign, body in zip(parts[0::2], parts[1::2]):
        coeff = f.one
        exps: dict[int, int] = {}
        for factor in body.split("*"):
            factor = factor.strip()
            match = _VAR.match(factor)
            if match:
                k = ring.index(int(match.group(1)), int(match.group(2)))
                exps[k] = exps.get(k, 0) + int(match.group(3) or 1)
            else:
                coeff = f.mul(coeff, f.parse(factor))
        if sign == "-":
            coeff = f.neg(coeff)
        m = ring.mono(exps)
        v = f.add(terms.get(m, f.zero), coeff)
        if f.is_zero(v):
            terms.pop(m, None)
        else:
            terms[m] = v
    return SparsePoly(ring, terms)
