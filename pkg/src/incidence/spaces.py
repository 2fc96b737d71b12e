"""
Solution spaces of operators on I(X, R).

The derivation and Jordan-derivation conditions are linear in the unknown
coefficients C^{ij}_{xy}. Unknown ``(s, t)`` sits at column
``pos[s] * |B| + pos[t]``. One equation block is assembled per pair of
basis elements ``a = e_ij``, ``b = e_kl`` from the Leibniz defect

    D(e_ij e_kl) - D(e_ij) e_kl - e_ij D(e_kl)

which, by e_xy e_uv = [y == u] e_xv, touches only three families of
unknowns. The space is then an exact kernel (see :mod:`incidence.exactla`).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from incidence.algebra import IncidenceElement, basis_elem_idx
from incidence.errors import NotADerivation, SizeLimit, UnsupportedRing
from incidence.exactla import (
    ExactMatrix,
    SpanBasis,
    kernel,
    row_space,
    solve,
    span_equal,
)
from incidence.operators import (
    LinearOperator,
    inner_operator,
    is_derivation,
    transitive_operator,
)
from incidence.poset import Preorder
from incidence.scalar import INTEGERS, Ring
from incidence.transitive import TransitiveMap, cocycle_rows, from_sigma, sigma_from_values

# |B|^2 unknowns; 64 basis pairs already means 4096 columns
MAX_SOLVER_BASIS = 64


@dataclass
class OperatorSpace:
    preorder: Preorder
    ring: Ring
    generators: tuple
    basis_kind: str  # "field-basis" | "lattice-generators"
    span: SpanBasis

    @property
    def dim(self) -> int:
        return len(self.generators)

    def __len__(self):
        return len(self.generators)


@dataclass
class Decomposition:
    g: IncidenceElement
    f: TransitiveMap


def _guard(P: Preorder, R: Ring):
    if R.is_residue and not R.is_field:
        raise UnsupportedRing(f"space computations need Q, F_p or Z, got {R}")
    if P.basis_size > MAX_SOLVER_BASIS:
        raise SizeLimit(
            f"|B| = {P.basis_size}: the solver would need {P.basis_size ** 2} unknowns"
        )


def _space(P: Preorder, R: Ring, span: SpanBasis) -> OperatorSpace:
    kind = "lattice-generators" if R.kind == INTEGERS else "field-basis"
    gens = tuple(LinearOperator.from_vector(P, R, v) for v in span.vectors)
    return OperatorSpace(P, R, gens, kind, span)


# -- system assembly ----------------------------------------------------------


def leibniz_rows(P: Preorder, a, b) -> dict:
    """Target pair -> {unknown column: coefficient} for the defect at (e_a, e_b)."""
    n = P.basis_size
    pos = P.position
    (i, j), (k, l) = a, b
    rows = defaultdict(lambda: defaultdict(int))
    if j == k:
        base = pos[(i, l)] * n
        for t in P.pairs:
            rows[t][base + pos[t]] += 1
    base = pos[a] * n
    for x in P.down[k]:
        rows[(x, l)][base + pos[(x, k)]] -= 1
    base = pos[b] * n
    for y in P.up[j]:
        rows[(i, y)][base + pos[(j, y)]] -= 1
    return rows


def _sparse(rows) -> list[dict]:
    out = []
    for r in rows.values():
        r = {c: v for c, v in r.items() if v}
        if r:
            out.append(r)
    return out


def derivation_system(P: Preorder) -> list[dict]:
    out = []
    for a in P.pairs:
        for b in P.pairs:
            out.extend(_sparse(leibniz_rows(P, a, b)))
    return out


def jordan_system(P: Preorder) -> list[dict]:
    out = []
    pairs = P.pairs
    for ia, a in enumerate(pairs):
        for b in pairs[ia:]:
            rows = leibniz_rows(P, a, b)
            if b != a:
                for t, r in leibniz_rows(P, b, a).items():
                    for c, v in r.items():
                        rows[t][c] += v
            out.extend(_sparse(rows))
    return out


def _solve_space(P: Preorder, R: Ring, rows) -> OperatorSpace:
    n = P.basis_size
    M = ExactMatrix.from_sparse(R, n * n, rows)
    return _space(P, R, kernel(M))


def derivation_space(P: Preorder, R: Ring) -> OperatorSpace:
    _guard(P, R)
    return _solve_space(P, R, derivation_system(P))


def jordan_space(P: Preorder, R: Ring) -> OperatorSpace:
    _guard(P, R)
    return _solve_space(P, R, jordan_system(P))


# -- inner derivations and the center -----------------------------------------


def inner_generators(P: Preorder, R: Ring) -> list[LinearOperator]:
    """Inn_{e_xy} for every basis pair, in basis order."""
    return [inner_operator(basis_elem_idx(P, R, p)) for p in P.pairs]


def inner_space(P: Preorder, R: Ring) -> OperatorSpace:
    _guard(P, R)
    n = P.basis_size
    span = row_space(R, n * n, [D.to_vector() for D in inner_generators(P, R)])
    return _space(P, R, span)


def center(P: Preorder, R: Ring) -> SpanBasis:
    """Kernel of g -> Inn_g, as coefficient vectors in basis order."""
    _guard(P, R)
    cols = [D.to_vector() for D in inner_generators(P, R)]
    n = P.basis_size
    rows = [{s: cols[s][t] for s in range(n) if cols[s][t]} for t in range(n * n)]
    return kernel(ExactMatrix.from_sparse(R, n, [r for r in rows if r]))


# -- transitive maps ----------------------------------------------------------


def transitive_space(P: Preorder, R: Ring) -> SpanBasis:
    _guard(P, R)
    return kernel(ExactMatrix.from_sparse(R, P.basis_size, cocycle_rows(P)))


def trivial_space(P: Preorder, R: Ring) -> SpanBasis:
    _guard(P, R)
    vecs = [
        from_sigma(sigma_from_values(P, R, {x: 1})).to_vector() for x in P.elements
    ]
    return row_space(R, P.basis_size, vecs)


def cohomology_rank(P: Preorder, R: Ring) -> int:
    """rank(transitive maps) - rank(trivial maps)."""
    return transitive_space(P, R).rank - trivial_space(P, R).rank


def transitive_maps(P: Preorder, R: Ring) -> list[TransitiveMap]:
    return [TransitiveMap.from_vector(P, R, v) for v in transitive_space(P, R).vectors]


def derivation_space_structured(P: Preorder, R: Ring) -> OperatorSpace:
    """Span of every Inn_{e_xy} together with Delta_f over a basis of transitive maps."""
    _guard(P, R)
    n = P.basis_size
    vecs = [D.to_vector() for D in inner_generators(P, R)]
    vecs += [transitive_operator(f).to_vector() for f in transitive_maps(P, R)]
    return _space(P, R, row_space(R, n * n, vecs))


def spaces_equal(A: OperatorSpace, B: OperatorSpace) -> bool:
    return span_equal(A.span, B.span)


# -- decomposition ------------------------------------------------------------


def decompose(D: LinearOperator) -> Decomposition:
    """Split a derivation as Inn_g + Delta_f.

    f(i, j) is the diagonal coefficient C^{ij}_{ij}; g(i, j) = C^{jj}_{ij}
    off the diagonal and 0 on it.
    """
    if not is_derivation(D):
        raise NotADerivation("decompose needs a derivation")
    P, R = D.preorder, D.ring
    f = TransitiveMap(P, R, {p: D._c(p, p) for p in P.pairs})
    g = IncidenceElement._raw(P, R, {
        (i, j): v
        for i, j in P.pairs
        if i != j and (v := D._c((j, j), (i, j))) != 0
    })
    return Decomposition(g, f)


def is_inner(D: LinearOperator) -> IncidenceElement | None:
    """A witness g with Inn_g = D, or None when D is outer."""
    if not is_derivation(D):
        raise NotADerivation("is_inner needs a derivation")
    P, R = D.preorder, D.ring
    _guard(P, R)
    cols = [G.to_vector() for G in inner_generators(P, R)]
    x = solve(R, cols, D.to_vector())
    if x is None:
        return None
    return IncidenceElement(P, R, dict(zip(P.pairs, x)))


# -- reports ------------------------------------------------------------------


def comparison_report(P: Preorder, R: Ring) -> dict:
    """Ranks of the derivation and Jordan spaces and whether they coincide."""
    der = derivation_space(P, R)
    jor = jordan_space(P, R)
    return {
        "ring": str(R),
        "two_torsion_free": R.is_two_torsion_free(),
        "basis_size": P.basis_size,
        "derivation_rank": der.dim,
        "jordan_rank": jor.dim,
        "equal": spaces_equal(der, jor),
        "proper_jordan": [
            k for k, D in enumerate(jor.generators) if not is_derivation(D)
        ],
    }
