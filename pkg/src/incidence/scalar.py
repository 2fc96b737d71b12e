"""
Exact coefficient rings.

Four kinds of commutative ring with identity are supported:

    Z      arbitrary precision integers
    Q      rationals (``fractions.Fraction``)
    F<p>   the prime field of order p
    Z<n>   the residue ring Z/nZ, n >= 2

Throughout the package ring elements travel as *raw* canonical Python
values (``int`` or ``Fraction``) and a :class:`Ring` says how to combine
them. :class:`Scalar` pairs a raw value with its ring for callers who want
ring-checked arithmetic.

    >>> F5 = ring_from_string("F5")
    >>> F5.inv(2)
    3
    >>> Scalar.parse(QQ, "1/2") + Scalar.parse(QQ, "1/3")
    Scalar(Q, 5/6)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from incidence.errors import NonPrimeModulus, NotInvertible, ParseError, RingMismatch

INTEGERS = "integers"
RATIONALS = "rationals"
PRIME_FIELD = "prime-field"
MODULAR = "modular"

_RING_RE = re.compile(r"^(?:(Z)|(Q)|F(\d+)|Z(\d+))$")


def is_prime(n: int) -> bool:
    # trial division; moduli are small by design
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class Ring:
    """Descriptor of a coefficient ring; see :func:`ring_from_string`."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind in (INTEGERS, RATIONALS):
            if self.modulus is not None:
                raise ValueError(f"{self.kind} takes no modulus")
        elif self.kind == PRIME_FIELD:
            if not isinstance(self.modulus, int) or not is_prime(self.modulus):
                raise NonPrimeModulus(f"F{self.modulus}: {self.modulus} is not prime")
        elif self.kind == MODULAR:
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise ParseError(f"Z/n needs n >= 2, got {self.modulus}")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    def __str__(self):
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRIME_FIELD:
            return f"F{self.modulus}"
        return f"Z{self.modulus}"

    def __repr__(self):
        return f"Ring({self})"

    # -- classification ---------------------------------------------------

    @property
    def is_field(self) -> bool:
        if self.kind == RATIONALS or self.kind == PRIME_FIELD:
            return True
        return self.kind == MODULAR and is_prime(self.modulus)

    @property
    def is_residue(self) -> bool:
        return self.kind in (PRIME_FIELD, MODULAR)

    @property
    def characteristic(self) -> int:
        return self.modulus if self.is_residue else 0

    def is_two_torsion_free(self) -> bool:
        """True iff ``2x = 0`` forces ``x = 0``."""
        if self.kind in (INTEGERS, RATIONALS):
            return True
        return self.modulus % 2 == 1

    # -- raw arithmetic ---------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    def canon(self, value):
        """Canonical raw representative of ``value`` (int, Fraction or Scalar)."""
        if isinstance(value, Scalar):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} value used in {self}")
            return value.value
        if isinstance(value, bool):
            value = int(value)
        if self.kind == INTEGERS:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ValueError(f"{value} is not an integer")
                return value.numerator
            return int(value)
        if self.kind == RATIONALS:
            return Fraction(value)
        n = self.modulus
        if isinstance(value, Fraction):
            return value.numerator * self.inv(value.denominator % n) % n
        return int(value) % n

    def add(self, a, b):
        s = a + b
        return s % self.modulus if self.is_residue else s

    def sub(self, a, b):
        s = a - b
        return s % self.modulus if self.is_residue else s

    def mul(self, a, b):
        s = a * b
        return s % self.modulus if self.is_residue else s

    def neg(self, a):
        return -a % self.modulus if self.is_residue else -a

    def is_unit(self, a) -> bool:
        if self.kind == INTEGERS:
            return a in (1, -1)
        if self.kind == RATIONALS:
            return a != 0
        return gcd(a, self.modulus) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertible(f"{self.format(a)} is not a unit in {self}")
        if self.kind == INTEGERS:
            return a
        if self.kind == RATIONALS:
            return 1 / a
        return pow(a, -1, self.modulus)

    # -- text -------------------------------------------------------------

    def format(self, value) -> str:
        return str(value)

    def parse(self, text: str):
        text = text.strip()
        try:
            if self.kind == RATIONALS:
                if not re.fullmatch(r"-?\d+(/\d+)?", text):
                    raise ValueError
                v = Fraction(text)
            else:
                if not re.fullmatch(r"-?\d+", text):
                    raise ValueError
                v = int(text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad {self} scalar {text!r}") from None
        return self.canon(v)

    def random(self, rng, bound: int = 5):
        """A small random element; ``rng`` is a ``random.Random``."""
        if self.kind == RATIONALS:
            return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        if self.is_residue:
            return rng.randrange(self.modulus)
        return rng.randint(-bound, bound)


ZZ = Ring(INTEGERS)
QQ = Ring(RATIONALS)


def prime_field(p: int) -> Ring:
    return Ring(PRIME_FIELD, p)


def modular(n: int) -> Ring:
    return Ring(MODULAR, n)


def ring_from_string(s: str) -> Ring:
    m = _RING_RE.match(s.strip())
    if m is None:
        raise ParseError(f"bad ring descriptor {s!r}; expected Z, Q, F<p> or Z<n>")
    if m.group(1):
        return ZZ
    if m.group(2):
        return QQ
    if m.group(3):
        return prime_field(int(m.group(3)))
    return modular(int(m.group(4)))


def is_two_torsion_free(r: Ring) -> bool:
    return r.is_two_torsion_free()


@dataclass(frozen=True)
class Scalar:
    """A ring element in canonical form; equality is representation equality."""

    ring: Ring
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.ring.canon(self.value))

    @classmethod
    def parse(cls, ring: Ring, text: str) -> Scalar:
        return cls(ring, ring.parse(text))

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"Scalar({self.ring}, {self})"

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, int):
            return self.ring.canon(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.ring, self.ring.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.ring, self.ring.sub(self.value, b))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.ring, self.ring.mul(self.value, b))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def inverse(self) -> Scalar:
        return Scalar(self.ring, self.ring.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None):
    """Dispatch one of add, sub, mul, neg, inv, eq on ring-checked scalars."""
    if op in ("neg", "inv"):
        if b is not None:
            raise TypeError(f"{op} takes one argument")
        return -a if op == "neg" else a.inverse()
    if b is None:
        raise TypeError(f"{op} takes two arguments")
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")
