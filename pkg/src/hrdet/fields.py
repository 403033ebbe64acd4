"""Coefficient fields: the rationals, prime fields and binary fields GF(2^e).

Elements are plain Python values so the polynomial kernel can use them
directly: ``int``/``Fraction`` for QQ, ``int`` in ``[0, p)`` for GF(p) and
an ``int`` bit mask (polynomial basis over GF(2)) for GF(2^e).
"""

from __future__ import annotations

from random import Random
from fractions import Fraction
from functools import lru_cache

import sympy

# Default moduli for GF(2^e); other degrees fall back to the smallest
# irreducible polynomial found by search.
KNOWN_MODULI = {
    10: (1 << 10) | (1 << 3) | 1,  # t^10 + t^3 + 1
    31: (1 << 31) | (1 << 3) | 1,  # t^31 + t^3 + 1
}

MERSENNE_31 = 2**31 - 1


class FieldError(ArithmeticError):
    pass


class Field:
    """Common interface; subclasses fix the element representation."""

    characteristic: int = 0
    name: str = ""

    zero = 0
    one = 1

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        result = self.one
        base = a
        if k < 0:
            base, k = self.inv(a), -k
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == 0

    def from_scalar(self, c):
        return c

    def sum(self, items):
        total = self.zero
        for x in items:
            total = self.add(total, x)
        return total

    def random(self, rng: Random):
        raise NotImplementedError

    def random_nonzero(self, rng: Random):
        while True:
            x = self.random(rng)
            if not self.is_zero(x):
                return x

    def sqrt(self, a):
        """A square root of ``a`` in the field, or None."""
        raise NotImplementedError

    def square_class(self, a):
        """Canonical representative of ``a`` in k^x / (k^x)^2."""
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise NotImplementedError

    def convert(self, c, source: Field):
        """Image of a scalar of ``source`` (its prime field or QQ) in this field."""
        if source == self:
            return c
        if isinstance(source, Rationals):
            if isinstance(c, int):
                return self.from_int(c)
            c = Fraction(c)
            return self.div(self.from_int(c.numerator), self.from_int(c.denominator))
        if source.characteristic == self.characteristic and isinstance(source, PrimeField):
            return self.from_int(c)
        raise FieldError(f"cannot map {source.name} into {self.name}")

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)


class Rationals(Field):
    characteristic = 0
    name = "QQ"

    def from_int(self, n: int):
        return n

    @staticmethod
    def normalize(a):
        if isinstance(a, Fraction) and a.denominator == 1:
            return a.numerator
        return a

    def add(self, a, b):
        return self.normalize(a + b)

    def sub(self, a, b):
        return self.normalize(a - b)

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return self.normalize(a * b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if a in (1, -1):
            return a
        return self.normalize(Fraction(1) / a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if isinstance(a, int) and isinstance(b, int):
            q, r = divmod(a, b)
            if r == 0:
                return q
        return self.normalize(Fraction(a) / b)

    def random(self, rng: Random):
        return rng.randint(-1000, 1000)

    def sqrt(self, a):
        a = Fraction(a)
        if a < 0:
            return None
        num, den = sympy.integer_nthroot(a.numerator, 2), sympy.integer_nthroot(a.denominator, 2)
        if num[1] and den[1]:
            return self.normalize(Fraction(int(num[0]), int(den[0])))
        return None

    def square_class(self, a):
        """The signed squarefree integer representing ``a`` modulo squares."""
        if a == 0:
            raise FieldError("zero has no square class")
        a = Fraction(a)
        n = a.numerator * a.denominator
        sign = -1 if n < 0 else 1
        core = 1
        for prime, exp in sympy.factorint(abs(n)).items():
            if exp % 2:
                core *= prime
        return sign * core

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        return self.normalize(Fraction(text))


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not sympy.isprime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, k: int):
        return pow(a, k, self.p)

    def random(self, rng: Random):
        return rng.randrange(self.p)

    def sqrt(self, a):
        a %= self.p
        if a == 0 or self.p == 2:
            return a
        roots = sympy.sqrt_mod(a, self.p, all_roots=False)
        return None if roots is None else int(roots)

    def square_class(self, a):
        a %= self.p
        if a == 0:
            raise FieldError("zero has no square class")
        if self.p == 2:
            return 1
        if pow(a, (self.p - 1) // 2, self.p) == 1:
            return 1
        # smallest non-residue represents the other class
        c = 2
        while pow(c, (self.p - 1) // 2, self.p) == 1:
            c += 1
        return c

    def parse(self, text: str):
        return int(text) % self.p


def _clmul(a: int, b: int) -> int:
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def _gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _gf2_mulmod(a: int, b: int, m: int) -> int:
    return _gf2_mod(_clmul(a, b), m)


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


def _gf2_powmod(a: int, k: int, m: int) -> int:
    result = 1
    while k:
        if k & 1:
            result = _gf2_mulmod(result, a, m)
        a = _gf2_mulmod(a, a, m)
        k >>= 1
    return result


def is_irreducible_gf2(m: int) -> bool:
    """Rabin's irreducibility test for a polynomial over GF(2) (bit mask)."""
    e = m.bit_length() - 1
    if e < 1:
        return False
    t = _gf2_mod(0b10, m)

    def frob(k: int) -> int:
        x = t
        for _ in range(k):
            x = _gf2_mulmod(x, x, m)
        return x

    if frob(e) != t:
        return False
    for q in sympy.primefactors(e):
        if _gf2_gcd(m, frob(e // q) ^ t) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(e: int) -> int:
    if e in KNOWN_MODULI:
        return KNOWN_MODULI[e]
    for low in range(1, 1 << e, 2):
        m = (1 << e) | low
        if is_irreducible_gf2(m):
            return m
    raise FieldError(f"no irreducible polynomial of degree {e}")


class BinaryField(Field):
    """GF(2^e) in the polynomial basis modulo an irreducible ``modulus``.

    Small fields use exp/log tables; larger ones multiply carrylessly.
    """

    TABLE_LIMIT = 16

    def __init__(self, e: int, modulus: int | None = None):
        if e < 1:
            raise FieldError("extension degree must be positive")
        self.e = e
        self.modulus = default_modulus(e) if modulus is None else modulus
        if self.modulus.bit_length() - 1 != e or not is_irreducible_gf2(self.modulus):
            raise FieldError("modulus must be irreducible of degree e")
        self.characteristic = 2
        self.order = 1 << e
        self.name = f"GF(2^{e})"
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if e <= self.TABLE_LIMIT:
            self._build_tables()

    def _build_tables(self) -> None:
        n = self.order - 1
        primes = sympy.primefactors(n) if n > 1 else []
        g = 2 if self.e > 1 else 1
        while any(_gf2_powmod(g, n // q, self.modulus) == 1 for q in primes):
            g += 1
        exp = [0] * (2 * n)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = _gf2_mulmod(x, g, self.modulus)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp, self._log = exp, log

    def from_int(self, n: int):
        return n & 1

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return _gf2_mulmod(a, b, self.modulus)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return _gf2_powmod(a, self.order - 2, self.modulus)

    def pow(self, a, k: int):
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if k == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * k) % (self.order - 1)]
        k %= self.order - 1
        return _gf2_powmod(a, k, self.modulus)

    def random(self, rng: Random):
        return rng.randrange(self.order)

    def sqrt(self, a):
        # Frobenius is bijective: sqrt(a) = a^(2^(e-1))
        x = a
        for _ in range(self.e - 1):
            x = self.mul(x, x)
        return x

    def square_class(self, a):
        if a == 0:
            raise FieldError("zero has no square class")
        return 1

    def format(self, a) -> str:
        return f"0x{a:x}"

    def parse(self, text: str):
        value = int(text, 0)
        if value >= self.order:
            raise FieldError(f"{text} is not an element of {self.name}")
        return value


QQ = Rationals()


def parse_char(text: str) -> Field:
    """Field from a ``--char`` string: ``0``, a prime ``p``, or ``2^e``."""
    text = text.strip()
    if "^" in text:
        base, _, exp = text.partition("^")
        if base.strip() != "2":
            raise FieldError("only binary extension fields 2^e are supported")
        return BinaryField(int(exp))
    value = int(text)
    if value == 0:
        return QQ
    return PrimeField(value)


def sampling_field(field: Field) -> Field:
    """A large finite field of the same characteristic for random points."""
    if field.characteristic == 0:
        return PrimeField(MERSENNE_31)
    if isinstance(field, PrimeField) and field.p == 2:
        return BinaryField(16)
    return field
