import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from incidence.acceptance import dense_rank
from incidence.errors import DimensionMismatch, RingMismatch, UnsupportedRing
from incidence.exactla import (
    ExactMatrix,
    SpanBasis,
    hnf,
    in_span,
    kernel,
    rank,
    row_space,
    solve,
    span_equal,
)
from incidence.scalar import QQ, ZZ, modular, prime_field


def M(ring, rows):
    return ExactMatrix.from_dense(ring, rows)


def test_kernel_examples():
    assert len(kernel(M(QQ, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))) == 0
    K = kernel(M(QQ, [[1, 1]]))
    assert K.vectors == ((-1, 1),)
    assert kernel(M(ZZ, [[2, 2]])).vectors == ((1, -1),)
    with pytest.raises(UnsupportedRing):
        kernel(M(modular(6), [[1, 1]]))
    assert kernel(M(modular(7), [[1, 1]])).vectors == ((6, 1),)


def test_z_kernel_saturated_where_rational_scaling_is_not():
    # rational basis (-1/2, 1, 0), (-1/2, 0, 1) scaled to integers misses (-1, 1, 1)
    K = kernel(M(ZZ, [[2, 1, 1]]))
    assert in_span((-1, 1, 1), K)
    naive = SpanBasis(ZZ, 3, ((-1, 2, 0), (-1, 0, 2)))
    assert not in_span((-1, 1, 1), naive)
    assert not span_equal(K, naive)
    # every integer solution with small entries is in the lattice
    for a in range(-3, 4):
        for b in range(-3, 4):
            for c in range(-3, 4):
                if 2 * a + b + c == 0:
                    assert in_span((a, b, c), K)


def test_span_equal_examples():
    A, B = SpanBasis(QQ, 2, ((1, 0),)), SpanBasis(QQ, 2, ((2, 0),))
    assert span_equal(A, B)
    A, B = SpanBasis(ZZ, 2, ((1, 0),)), SpanBasis(ZZ, 2, ((2, 0),))
    assert not span_equal(A, B)
    assert span_equal(A, A)
    with pytest.raises(RingMismatch):
        span_equal(SpanBasis(QQ, 2, ()), SpanBasis(ZZ, 2, ()))
    with pytest.raises(DimensionMismatch):
        span_equal(SpanBasis(QQ, 2, ()), SpanBasis(QQ, 3, ()))


def test_in_span_examples():
    A = SpanBasis(QQ, 2, ((1, 0),))
    assert in_span((0, 0), A)
    assert not in_span((1, 1), A)
    assert in_span((3, 3), SpanBasis(ZZ, 2, ((1, 1),)))
    assert solve(ZZ, [(1, 1)], (3, 3)) == [3]
    assert solve(ZZ, [(2, 2)], (3, 3)) is None
    assert solve(QQ, [(2, 2)], (3, 3)) == [Fraction(3, 2)]
    assert solve(prime_field(5), [(2, 2)], (3, 3)) == [4]


def test_hnf_canonical():
    H = hnf([(2, 4, 6), (0, 3, 3), (2, 7, 9)])
    assert H == [[2, 1, 3], [0, 3, 3]]
    assert hnf([(4, 6), (6, 9)]) == hnf([(2, 3)])


def _random_int_matrix(rng):
    r, c = rng.randint(1, 5), rng.randint(1, 7)
    rows = [[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)]
    for row in rows:
        k = rng.choice([1, 1, 2, 3])
        row[:] = [k * v for v in row]
    return rows


@pytest.mark.parametrize("seed", range(40))
def test_rank_nullity_and_annihilation(seed):
    rng = random.Random(seed)
    rows = _random_int_matrix(rng)
    cols = len(rows[0])
    r = dense_rank(rows)
    for R in (QQ, ZZ):
        K = kernel(M(R, rows))
        assert r + len(K) == cols
        assert rank(M(R, rows)) == r
        for v in K.vectors:
            assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in rows)
    for p in (2, 3, 7):
        R = prime_field(p)
        K = kernel(M(R, rows))
        assert rank(M(R, rows)) + len(K) == cols
        for v in K.vectors:
            assert all(sum(a * x for a, x in zip(row, v)) % p == 0 for row in rows)


@pytest.mark.parametrize("seed", range(20))
def test_z_kernel_contains_every_primitive_solution(seed):
    rng = random.Random(100 + seed)
    rows = _random_int_matrix(rng)
    cols = len(rows[0])
    KQ, KZ = kernel(M(QQ, rows)), kernel(M(ZZ, rows))
    assert KQ.rank == KZ.rank
    for _ in range(20):
        if not KQ.vectors:
            break
        coef = [Fraction(rng.randint(-5, 5), rng.randint(1, 6)) for _ in KQ.vectors]
        v = [sum(a * vec[k] for a, vec in zip(coef, KQ.vectors)) for k in range(cols)]
        den = 1
        for x in v:
            den = den * x.denominator // __import__("math").gcd(den, x.denominator)
        w = [int(x * den) for x in v]
        assert in_span(w, KZ)


vectors = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), max_size=4)


@settings(max_examples=60, deadline=None)
@given(vectors, vectors, vectors)
def test_span_equal_is_equivalence(a, b, c):
    for R in (QQ, ZZ, prime_field(3)):
        A, B, C = (row_space(R, 3, v) for v in (a, b, c))
        assert span_equal(A, A)
        assert span_equal(A, B) == span_equal(B, A)
        if span_equal(A, B) and span_equal(B, C):
            assert span_equal(A, C)
        # the reduced generators span the same module as the raw ones
        assert span_equal(A, SpanBasis(R, 3, tuple(tuple(R.canon(x) for x in v) for v in a)))


@settings(max_examples=60, deadline=None)
@given(vectors, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_agrees_with_in_span(gens, target):
    for R in (QQ, ZZ, prime_field(5)):
        cols = [tuple(R.canon(x) for x in g) for g in gens]
        t = tuple(R.canon(x) for x in target)
        x = solve(R, cols, t)
        assert (x is not None) == in_span(t, SpanBasis(R, 3, tuple(cols)))
        if x is not None:
            assert all(R.canon(sum(c * col[k] for c, col in zip(x, cols)) - t[k]) == 0
                       for k in range(3))
