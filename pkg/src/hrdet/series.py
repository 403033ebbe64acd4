"""Truncated Laurent series in one variable t over a finite field.

Used to restrict rational functions to a line through a point of a
hypersurface and read off the order of vanishing in t.  Elements are
``(v, coeffs)`` meaning t^v * (coeffs[0] + coeffs[1] t + ...) + O(t^(v+len));
an empty ``coeffs`` is the unknown remainder O(t^v).
"""

from __future__ import annotations

from .fields import Field

EXACT_ZERO_VAL = 1 << 40


class PrecisionLost(ArithmeticError):
    """A division by a series whose leading term was lost to cancellation."""


class LaurentDomain:
    def __init__(self, field: Field, precision: int = 8):
        self.field = field
        self.precision = precision
        self.zero = (EXACT_ZERO_VAL, [])
        self.one = self.from_scalar(field.one)

    def from_scalar(self, c):
        if self.field.is_zero(c):
            return self.zero
        return (0, [c] + [self.field.zero] * (self.precision - 1))

    def from_int(self, n: int):
        return self.from_scalar(self.field.from_int(n))

    def linear(self, c0, c1):
        """The exact polynomial c0 + c1 t."""
        f = self.field
        coeffs = [c0, c1] + [f.zero] * (self.precision - 2)
        return self._normalize(0, coeffs)

    def _normalize(self, v: int, coeffs: list):
        f = self.field
        k = 0
        while k < len(coeffs) and f.is_zero(coeffs[k]):
            k += 1
        if k == len(coeffs):
            return (v + len(coeffs), [])
        return (v + k, coeffs[k:])

    def add(self, a, b):
        f = self.field
        va, ca = a
        vb, cb = b
        if not ca and va >= EXACT_ZERO_VAL:
            return b
        if not cb and vb >= EXACT_ZERO_VAL:
            return a
        top = min(va + len(ca), vb + len(cb))
        v = min(va, vb)
        if top <= v:
            return (top, [])
        coeffs = [f.zero] * (top - v)
        for k, c in enumerate(ca):
            pos = va + k - v
            if pos >= len(coeffs):
                break
            coeffs[pos] = c
        for k, c in enumerate(cb):
            pos = vb + k - v
            if pos >= len(coeffs):
                break
            coeffs[pos] = f.add(coeffs[pos], c)
        return self._normalize(v, coeffs)

    def neg(self, a):
        return (a[0], [self.field.neg(c) for c in a[1]])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        f = self.field
        va, ca = a
        vb, cb = b
        if not ca or not cb:
            if (not ca and va >= EXACT_ZERO_VAL) or (not cb and vb >= EXACT_ZERO_VAL):
                return self.zero
            return (va + vb, [])
        n = min(len(ca), len(cb))
        out = [f.zero] * n
        for i in range(n):
            ai = ca[i]
            if f.is_zero(ai):
                continue
            for j in range(n - i):
                bj = cb[j]
                if not f.is_zero(bj):
                    out[i + j] = f.add(out[i + j], f.mul(ai, bj))
        return (va + vb, out)

    def inverse(self, b):
        f = self.field
        vb, cb = b
        if not cb:
            raise PrecisionLost("inverting a series of unknown valuation")
        n = len(cb)
        inv0 = f.inv(cb[0])
        out = [inv0] + [f.zero] * (n - 1)
        for k in range(1, n):
            acc = f.zero
            for j in range(1, k + 1):
                acc = f.add(acc, f.mul(cb[j], out[k - j]))
            out[k] = f.neg(f.mul(acc, inv0))
        return (-vb, out)

    def div(self, a, b):
        return self.mul(a, self.inverse(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inverse(a), -k)
        result = self.one
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def is_zero(self, a) -> bool:
        return not a[1] and a[0] >= EXACT_ZERO_VAL

    def valuation(self, a) -> int | None:
        """Exact t-adic valuation, or None when precision ran out."""
        v, c = a
        return v if c else None

    def sum(self, items):
        total = self.zero
        for x in items:
            total = self.add(total, x)
        return total
