import random
from fractions import Fraction

import pytest

from incidence.errors import NonPrimeModulus, NotInvertible, ParseError, RingMismatch
from incidence.scalar import (
    QQ,
    ZZ,
    Scalar,
    is_two_torsion_free,
    modular,
    prime_field,
    ring_from_string,
    scalar_arith,
)

RINGS = [ZZ, QQ, prime_field(2), prime_field(5), prime_field(7), modular(6), modular(9)]


@pytest.mark.parametrize("text,ring", [
    ("Z", ZZ), ("Q", QQ), ("F5", prime_field(5)), ("F2", prime_field(2)), ("Z9", modular(9)),
])
def test_ring_from_string(text, ring):
    assert ring_from_string(text) == ring
    assert str(ring) == text


@pytest.mark.parametrize("text", ["F4", "F6", "F1", "F0"])
def test_non_prime_field(text):
    with pytest.raises(NonPrimeModulus):
        ring_from_string(text)


@pytest.mark.parametrize("text", ["R", "F", "Zx", "", "Q2", "Z1", "Z0"])
def test_bad_ring_string(text):
    with pytest.raises(ParseError):
        ring_from_string(text)


def test_examples():
    half, third = Scalar.parse(QQ, "1/2"), Scalar.parse(QQ, "1/3")
    assert scalar_arith("add", half, third) == Scalar(QQ, Fraction(5, 6))
    assert scalar_arith("inv", Scalar(prime_field(5), 2)) == Scalar(prime_field(5), 3)
    with pytest.raises(NotInvertible):
        scalar_arith("inv", Scalar(modular(6), 2))
    with pytest.raises(NotInvertible):
        scalar_arith("inv", Scalar(ZZ, 2))
    with pytest.raises(RingMismatch):
        scalar_arith("add", Scalar(ZZ, 1), Scalar(QQ, 1))
    assert scalar_arith("eq", Scalar(modular(6), 8), Scalar(modular(6), 2))


def test_two_torsion():
    assert is_two_torsion_free(ZZ) and is_two_torsion_free(QQ)
    assert not is_two_torsion_free(prime_field(2))
    assert not is_two_torsion_free(modular(6))
    assert is_two_torsion_free(prime_field(3))


@pytest.mark.parametrize("n", range(2, 16))
def test_two_torsion_matches_enumeration(n):
    R = modular(n)
    brute = all(x == 0 for x in range(n) if 2 * x % n == 0)
    assert is_two_torsion_free(R) == brute


def test_text_format():
    assert str(Scalar(QQ, Fraction(4, -6))) == "-2/3"
    assert str(Scalar(QQ, 3)) == "3"
    assert str(Scalar(modular(9), -1)) == "8"
    assert Scalar.parse(prime_field(5), "7").value == 2
    with pytest.raises(ParseError):
        QQ.parse("1/0")
    with pytest.raises(ParseError):
        ZZ.parse("1/2")


@pytest.mark.parametrize("R", RINGS, ids=str)
def test_ring_axioms(R):
    rng = random.Random(str(R))
    for _ in range(1000):
        a, b, c = (Scalar(R, R.random(rng, 50)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a and a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == Scalar(R, 0) and a + (-a) == Scalar(R, 0)


@pytest.mark.parametrize("R", RINGS, ids=str)
def test_inverse_exactly_on_units(R):
    rng = random.Random(1)
    values = range(R.modulus) if R.is_residue else [R.random(rng, 20) for _ in range(200)]
    for v in values:
        a = Scalar(R, v)
        if R.is_residue:
            unit = any(v * w % R.modulus == 1 for w in range(R.modulus))
        elif R == ZZ:
            unit = v in (1, -1)
        else:
            unit = v != 0
        if unit:
            assert a.inverse() * a == Scalar(R, 1)
        else:
            with pytest.raises(NotInvertible):
                a.inverse()


@pytest.mark.parametrize("R", RINGS, ids=str)
def test_canonical_idempotent(R):
    rng = random.Random(2)
    for _ in range(100):
        s = Scalar(R, R.random(rng, 100))
        assert Scalar(R, s.value) == s
        assert R.canon(s.value) == s.value
        assert Scalar.parse(R, str(s)) == s
