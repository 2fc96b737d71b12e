import random

import pytest

from conftest import F2, F3, random_preorder
from incidence.errors import NotTransitive
from incidence.scalar import QQ, ZZ
from incidence.spaces import transitive_maps
from incidence.transitive import (
    PairFunction,
    TransitiveMap,
    cocycle_violations,
    find_witness,
    from_sigma,
    is_transitive,
    sigma_from_values,
    trivial_witness,
)


def crown_map(P, R):
    return PairFunction.from_labels(P, R, {("1", "3"): 1})


def test_crown_is_transitive_but_not_trivial(S):
    K = S["K22"]
    for R in (QQ, ZZ, F2, F3):
        f = crown_map(K, R)
        assert is_transitive(f)
        assert trivial_witness(f) is None
        sigma, pair = find_witness(f)
        assert sigma is None and pair == ("2", "4")


def test_chain_maps_are_trivial(S):
    C3 = S["C3"]
    f = PairFunction.from_labels(C3, QQ, {("1", "2"): 2, ("2", "3"): 5, ("1", "3"): 7})
    assert is_transitive(f)
    sigma = trivial_witness(f)
    assert sigma.as_dict() == {"1": 0, "2": -2, "3": -7}
    assert from_sigma(sigma) == f


def test_violations_reported(S):
    C3 = S["C3"]
    f = PairFunction.from_labels(C3, QQ, {("1", "2"): 1})
    assert cocycle_violations(f) == [("1", "2", "3")]
    with pytest.raises(NotTransitive):
        TransitiveMap.from_labels(C3, QQ, {("1", "2"): 1})
    with pytest.raises(NotTransitive):
        find_witness(f)
    # a nonzero diagonal value always breaks the law
    g = PairFunction.from_labels(S["A3"], QQ, {("1", "1"): 1})
    assert cocycle_violations(g) == [("1", "1", "1")]


def test_cycle_antisymmetry(S):
    M2 = S["M2"]
    f = PairFunction.from_labels(M2, ZZ, {("a", "b"): 3, ("b", "a"): -3})
    assert is_transitive(f)
    assert trivial_witness(f).as_dict() == {"a": 0, "b": -3}
    assert not is_transitive(PairFunction.from_labels(M2, ZZ, {("a", "b"): 3, ("b", "a"): 3}))
    # over F2 the same values are antisymmetric
    assert is_transitive(PairFunction.from_labels(M2, F2, {("a", "b"): 1, ("b", "a"): 1}))


@pytest.mark.parametrize("R", [QQ, ZZ, F3, F2], ids=str)
def test_sigma_round_trip(S, R):
    rng = random.Random(11)
    for P in S.values():
        for _ in range(10):
            sigma = sigma_from_values(P, R, {x: R.random(rng) for x in P.elements})
            f = from_sigma(sigma)
            w = trivial_witness(f)
            assert w is not None and from_sigma(w) == f


@pytest.mark.parametrize("R", [QQ, F3, F2], ids=str)
def test_transitive_invariants(S, R):
    for P in S.values():
        for f in transitive_maps(P, R):
            for i in range(len(P)):
                assert f(i, i) == 0
            for i, j in P.pairs:
                if P.leq_idx(j, i):
                    assert R.canon(f(i, j) + f(j, i)) == 0


def test_witness_is_consistent_on_random_preorders():
    rng = random.Random(21)
    for _ in range(40):
        P = random_preorder(rng, n_max=5, density=0.35)
        for R in (QQ, F2):
            for f in transitive_maps(P, R):
                sigma, pair = find_witness(f)
                if sigma is not None:
                    assert from_sigma(sigma) == f
                else:
                    assert pair is not None
