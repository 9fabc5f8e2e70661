"""Exact scalar arithmetic over Q and over prime fields F_p.

Scalars are plain Python values: ``fractions.Fraction`` over Q (always
stored reduced with positive denominator) and canonical residues in
``range(p)`` over F_p.  A field object supplies the arithmetic, parsing
and printing; no floating point exists anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_Q_RE = re.compile(r"^-?\d+(/\d+)?$")
_INT_RE = re.compile(r"^-?\d+$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface of the two supported exact fields."""

    finite = False
    name = "?"

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.name


class Rationals(Field):
    """The field Q with arbitrary-precision Fraction scalars."""

    finite = False
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def parse(self, text: str):
        if not _Q_RE.match(text):
            raise ParseError(f"not a rational scalar: {text!r}")
        num, _, den = text.partition("/")
        if den:
            d = int(den)
            if d == 0:
                raise ParseError(f"zero denominator: {text!r}")
            return Fraction(int(num), d)
        return Fraction(int(num))

    def format(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    """The field F_p with scalars stored as canonical residues in [0, p)."""

    finite = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return range(self.p)

    def parse(self, text: str):
        if not _INT_RE.match(text):
            raise ParseError(f"not a residue: {text!r}")
        return int(text) % self.p

    def format(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


QQ = Rationals()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_from_string(text: str) -> Field:
    """Parse a field tag: ``"Q"`` or ``"F<p>"`` with p prime."""
    if text == "Q":
        return QQ
    m = re.match(r"^F(\d+)$", text)
    if m:
        p = int(m.group(1))
        if not is_prime(p):
            raise ParseError(f"field modulus {p} is not prime")
        return GF(p)
    raise ParseError(f"unknown field tag: {text!r}")
