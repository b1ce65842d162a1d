"""Exact scalar arithmetic: the rationals or a prime field F_p.

Scalars are Fraction (char 0) or plain ints in [0, p) (char p).
Floats are never produced or accepted.
"""
from __future__ import annotations

from fractions import Fraction


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """ℚ for char 0, F_p for prime char p."""

    def __init__(self, char=0):
        if char != 0 and not _is_prime(char):
            raise ValueError("field characteristic must be 0 or a prime, got %r" % (char,))
        self.char = char
        self.zero = Fraction(0) if char == 0 else 0
        self.one = Fraction(1) if char == 0 else 1

    def of(self, x):
        "coerce an int, Fraction or coefficient string into a scalar"
        if isinstance(x, float):
            raise TypeError("floats are forbidden; got %r" % (x,))
        if isinstance(x, str):
            return self.parse(x)
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.char)
            return (x.numerator * pow(x.denominator, -1, self.char)) % self.char
        return int(x) % self.char

    def add(self, a, b):
        return (a + b) if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return (a - b) if self.char == 0 else (a - b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def mul(self, a, b):
        return (a * b) if self.char == 0 else (a * b) % self.char

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.char == 0 else pow(a, -1, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == 0

    def to_str(self, a):
        "exact string form: 'p/q' over ℚ, canonical representative over F_p"
        if self.char == 0:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else "%d/%d" % (a.numerator, a.denominator)
        return str(a % self.char)

    def parse(self, s):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/")
            return self.of(Fraction(int(num), int(den)))
        return self.of(int(s))

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "Q" if self.char == 0 else "F%d" % self.char


QQ = Field(0)
