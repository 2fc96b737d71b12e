"""
Exit criteria of the library, runnable from pytest and ``incidence verify``.

Each ``criterion_*`` function returns a :class:`Result`; all arithmetic is
exact, so every comparison is equality. Random draws use fixed seeds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from incidence import spaces
from incidence.algebra import convolve, delta, inverse, mobius, random_element, zeta
from incidence.errors import NotInvertible
from incidence.exactla import ExactMatrix, in_span, kernel
from incidence.operators import (
    LinearOperator,
    apply,
    check_derivation_form,
    herstein_check,
    inner_operator,
    is_derivation,
    transitive_operator,
)
from incidence.scalar import QQ, ZZ, prime_field
from incidence.suite import suite
from incidence.transitive import PairFunction, trivial_witness

F2, F3, F5 = prime_field(2), prime_field(3), prime_field(5)


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    detail: str = ""
    failures: list = field(default_factory=list)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.name}: {self.detail}"


def _result(number, name, failures, detail):
    return Result(number, name, not failures, detail, failures)


class _Cache:
    """Spaces are reused across criteria within one run."""

    def __init__(self):
        self.S = suite()
        self._der = {}
        self._jor = {}

    def der(self, name, R):
        key = (name, R)
        if key not in self._der:
            self._der[key] = spaces.derivation_space(self.S[name], R)
        return self._der[key]

    def jor(self, name, R):
        key = (name, R)
        if key not in self._jor:
            self._jor[key] = spaces.jordan_space(self.S[name], R)
        return self._jor[key]


def criterion_1(c: _Cache) -> Result:
    failures = []
    for name in c.S:
        for R in (QQ, F3, F5, ZZ):
            der, jor = c.der(name, R), c.jor(name, R)
            if not spaces.spaces_equal(jor, der):
                failures.append(f"{name}/{R}: Jordan space {jor.dim} != derivation space {der.dim}")
            for k, D in enumerate(jor.generators):
                if not is_derivation(D):
                    failures.append(f"{name}/{R}: Jordan generator {k} is not a derivation")
    return _result(1, "Jordan derivations are derivations", failures,
                   f"{len(c.S)} preorders x Q, F3, F5, Z")


def criterion_2(c: _Cache) -> Result:
    failures = []
    rng = random.Random(2)
    checked = 0
    for name, P in c.S.items():
        for R in (QQ, F3):
            gens = c.der(name, R).generators
            for k, D in enumerate(gens):
                if not check_derivation_form(D).conforms:
                    failures.append(f"{name}/{R}: generator {k} violates the derivation form")
            for _ in range(20):
                base = rng.choice(gens) if gens else LinearOperator(P, R)
                s, t = rng.choice(P.pairs), rng.choice(P.pairs)
                bump = rng.randrange(1, R.modulus) if R.is_residue else rng.choice([1, -1, 2, Fraction(1, 2)])
                coeffs = base.coeffs
                coeffs[(s, t)] = coeffs.get((s, t), 0) + bump
                D = LinearOperator(P, R, coeffs)
                if is_derivation(D) != check_derivation_form(D).conforms:
                    failures.append(f"{name}/{R}: checkers disagree on perturbation at {s}->{t}")
                checked += 1
    return _result(2, "normal form <=> Leibniz rule", failures,
                   f"{checked} perturbations classified consistently")


def criterion_3(c: _Cache) -> Result:
    failures = []
    count = 0
    for name in c.S:
        for R in (QQ, ZZ):
            for k, D in enumerate(c.der(name, R).generators):
                dec = spaces.decompose(D)
                if inner_operator(dec.g) + transitive_operator(dec.f) != D:
                    failures.append(f"{name}/{R}: generator {k} not reconstructed")
                count += 1
    return _result(3, "D = Inn_g + Delta_f reconstruction", failures, f"{count} generators")


def crown_cocycle(P, R):
    """f(1,3) = 1 and 0 elsewhere on the crown."""
    return PairFunction.from_labels(P, R, {("1", "3"): 1})


def criterion_4(c: _Cache) -> Result:
    failures = []
    K = c.S["K22"]
    f = crown_cocycle(K, QQ)
    if spaces.is_inner(transitive_operator(f)) is not None:
        failures.append("K22: Delta_f for the crown cocycle is inner")
    if trivial_witness(f) is not None:
        failures.append("K22: crown cocycle reported trivial")
    C3 = c.S["C3"]
    rng = random.Random(4)
    maps = spaces.transitive_maps(C3, QQ)
    samples = list(maps)
    for _ in range(10):
        coef = [QQ.random(rng) for _ in maps]
        vecs = [m.to_vector() for m in maps]
        vec = [sum(a * v[k] for a, v in zip(coef, vecs)) for k in range(C3.basis_size)]
        samples.append(PairFunction(C3, QQ, dict(zip(C3.pairs, vec))))
    for f in samples:
        delta_f = transitive_operator(f)
        g = spaces.is_inner(delta_f)
        if g is None or inner_operator(g) != delta_f:
            failures.append(f"C3: no inner witness for {f}")
    return _result(4, "Delta_f inner <=> f trivial", failures,
                   f"crown cocycle outer; {len(samples)} chain cocycles inner")


EXPECTED_COHOMOLOGY = {"C1": 0, "C2": 0, "C3": 0, "C4": 0, "C5": 0, "D4": 0,
                       "A3": 0, "M2": 0, "M3": 0, "K22": 1}


def criterion_5(c: _Cache) -> Result:
    failures = []
    ranks = {}
    for name, P in c.S.items():
        h = spaces.cohomology_rank(P, QQ)
        ranks[name] = h
        all_inner = spaces.spaces_equal(c.der(name, QQ), spaces.inner_space(P, QQ))
        if (h == 0) != all_inner:
            failures.append(f"{name}: cohomology rank {h} but all-inner = {all_inner}")
        if name in EXPECTED_COHOMOLOGY and h != EXPECTED_COHOMOLOGY[name]:
            failures.append(f"{name}: cohomology rank {h}, expected {EXPECTED_COHOMOLOGY[name]}")
    return _result(5, "all derivations inner <=> all transitive maps trivial", failures,
                   " ".join(f"{k}={v}" for k, v in ranks.items()))


EXPECTED_DER_DIM = {"C2": 2, "K22": 8, "M2": 3, "A3": 0}


def criterion_6(c: _Cache) -> Result:
    failures = []
    parts = []
    for name, P in c.S.items():
        d = c.der(name, QQ).dim
        rhs = (P.basis_size - spaces.center(P, QQ).rank
               + spaces.transitive_space(P, QQ).rank - spaces.trivial_space(P, QQ).rank)
        if d != rhs:
            failures.append(f"{name}: dim Der {d} != {rhs}")
        if name in EXPECTED_DER_DIM and d != EXPECTED_DER_DIM[name]:
            failures.append(f"{name}: dim Der {d}, expected {EXPECTED_DER_DIM[name]}")
        parts.append(f"{name}={d}")
    return _result(6, "dimension identity", failures, " ".join(parts))


def criterion_7(c: _Cache, trials: int = 100) -> Result:
    failures = []
    rng = random.Random(7)
    count = 0
    for name, P in c.S.items():
        for R in (QQ, F3):
            for k, D in enumerate(c.jor(name, R).generators):
                for _ in range(trials):
                    a, b, cc = (random_element(P, R, rng) for _ in range(3))
                    rep = herstein_check(D, a, b, cc)
                    count += 1
                    if not rep:
                        failures.append(f"{name}/{R}: generator {k}: {rep}")
                        break
    return _result(7, "Herstein identities", failures, f"{count} triples")


def criterion_8(c: _Cache, pairs: int = 50, singles: int = 100) -> Result:
    failures = []
    rng = random.Random(8)
    count = 0
    for name, P in c.S.items():
        for R in (QQ, F3, ZZ):
            for k, D in enumerate(c.der(name, R).generators):
                for _ in range(pairs):
                    u, v = random_element(P, R, rng), random_element(P, R, rng)
                    lhs = apply(D, convolve(u, v))
                    if lhs != convolve(apply(D, u), v) + convolve(u, apply(D, v)):
                        failures.append(f"{name}/{R}: derivation generator {k} fails Leibniz")
                        break
                    count += 1
            for k, D in enumerate(c.jor(name, R).generators):
                for _ in range(singles):
                    x = random_element(P, R, rng)
                    Dx = apply(D, x)
                    if apply(D, convolve(x, x)) != convolve(Dx, x) + convolve(x, Dx):
                        failures.append(f"{name}/{R}: Jordan generator {k} fails D(x^2)")
                        break
                    count += 1
    return _result(8, "Leibniz and Jordan laws on random elements", failures,
                   f"{count} random checks")


def criterion_9(c: _Cache, trials: int = 100) -> Result:
    failures = []
    rng = random.Random(9)
    for name, P in c.S.items():
        for R in (QQ, F3):
            one = delta(P, R)
            for _ in range(trials):
                f, g, h = (random_element(P, R, rng) for _ in range(3))
                if convolve(convolve(f, g), h) != convolve(f, convolve(g, h)):
                    failures.append(f"{name}/{R}: convolution not associative")
                    break
                if convolve(one, f) != f or convolve(f, one) != f:
                    failures.append(f"{name}/{R}: delta is not the identity")
                    break
        if P.is_partial_order():
            for R in (QQ, ZZ, F3):
                mu, z = mobius(P, R), zeta(P, R)
                if convolve(mu, z) != delta(P, R) or convolve(z, mu) != delta(P, R):
                    failures.append(f"{name}/{R}: mu * zeta != delta")
    try:
        inverse(zeta(c.S["M2"], QQ))
        failures.append("M2: zeta unexpectedly invertible")
    except NotInvertible:
        pass
    return _result(9, "algebra laws", failures, "associativity, identity, Mobius inversion")


def criterion_10(c: _Cache) -> Result:
    failures = []
    parts = []
    keys = {"ring", "two_torsion_free", "basis_size", "derivation_rank", "jordan_rank",
            "equal", "proper_jordan"}
    for name, P in c.S.items():
        rep = spaces.comparison_report(P, F2)
        if set(rep) != keys or rep["ring"] != "F2" or rep["two_torsion_free"]:
            failures.append(f"{name}: malformed report {rep}")
        parts.append(f"{name}:{rep['derivation_rank']}/{rep['jordan_rank']}")
    return _result(10, "F2 exploration (der/jordan ranks, no relation asserted)", failures,
                   " ".join(parts))


def dense_rank(rows) -> int:
    """Plain Gaussian elimination over Q on a dense copy."""
    m = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                k = m[r][c] / m[rank][c]
                m[r] = [x - k * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _random_matrix(rng, rows, cols):
    # scaled rows and duplicated columns make saturation matter
    base = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
    for r in base:
        k = rng.choice([1, 2, 3])
        r[:] = [k * v for v in r]
    if cols > 2:
        j = rng.randrange(cols - 1)
        for r in base:
            r[j + 1] = 2 * r[j]
    return base


def criterion_11(c: _Cache, matrices: int = 20, samples: int = 20) -> Result:
    failures = []
    rng = random.Random(11)
    for m in range(matrices):
        rows = _random_matrix(rng, rng.randint(1, 4), rng.randint(2, 7))
        cols = len(rows[0])
        r = dense_rank(rows)
        kq = kernel(ExactMatrix.from_dense(QQ, rows))
        kz = kernel(ExactMatrix.from_dense(ZZ, rows))
        if r + len(kq) != cols or r + len(kz) != cols:
            failures.append(f"matrix {m}: rank-nullity fails")
        for v in kq.vectors + kz.vectors:
            if any(sum(a * x for a, x in zip(row, v)) for row in rows):
                failures.append(f"matrix {m}: kernel vector not annihilated")
        for _ in range(samples if kq.vectors else 0):
            coef = [Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in kq.vectors]
            comb = [sum(a * v[k] for a, v in zip(coef, kq.vectors)) for k in range(cols)]
            den = lcm(*(x.denominator for x in comb))
            ints = [int(x * den) for x in comb]
            g = gcd(*ints)
            if g:
                ints = [x // g for x in ints]
            if not in_span(ints, kz):
                failures.append(f"matrix {m}: integer solution {ints} outside Z-kernel")
    for p in (3, 5):
        for _ in range(5):
            rows = [[rng.randrange(p) for _ in range(6)] for _ in range(4)]
            K = kernel(ExactMatrix.from_dense(prime_field(p), rows))
            for v in K.vectors:
                if any(sum(a * x for a, x in zip(row, v)) % p for row in rows):
                    failures.append(f"F{p}: kernel vector not annihilated")
    return _result(11, "exact kernels: saturation and rank-nullity", failures,
                   f"{matrices} integer matrices, {samples} lattice samples each")


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


def run_all(report=print) -> list[Result]:
    cache = _Cache()
    results = []
    for crit in CRITERIA:
        res = crit(cache)
        results.append(res)
        if report:
            report(res.line())
            for msg in res.failures[:10]:
                report(f"       {msg}")
    return results

