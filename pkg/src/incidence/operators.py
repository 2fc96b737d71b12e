"""
R-linear operators on I(X, R), given by their values on the basis.

``D.images[(i, j)]`` is the sparse image ``D(e_ij)`` as a map from target
pairs ``(x, y)`` to raw coefficients, i.e. the numbers C^{ij}_{xy}.
Operators flatten to vectors source-major, target-minor, both in basis
order; that flattening is what the space solvers work with.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from incidence.algebra import (
    IncidenceElement,
    basis_elem_idx,
    commutator,
    convolve,
    linear_combine,
)
from incidence.errors import NotComparable, NotTransitive, PreorderMismatch, RingMismatch
from incidence.poset import Preorder
from incidence.scalar import Ring
from incidence.transitive import PairFunction, is_transitive


class LinearOperator:
    __slots__ = ("preorder", "ring", "images")

    def __init__(self, preorder: Preorder, ring: Ring, coeffs=None):
        """``coeffs`` maps ``(source_pair, target_pair)`` index pairs to values."""
        self.preorder = preorder
        self.ring = ring
        images = defaultdict(dict)
        leq = preorder.leq_idx
        for (src, tgt), v in (coeffs or {}).items():
            if not leq(*src) or not leq(*tgt):
                raise NotComparable(f"{src} -> {tgt} leaves the basis")
            v = ring.canon(v)
            if v != 0:
                images[src][tgt] = v
        self.images = dict(images)

    @classmethod
    def _raw(cls, preorder, ring, images):
        obj = cls.__new__(cls)
        obj.preorder = preorder
        obj.ring = ring
        obj.images = {s: img for s, img in images.items() if img}
        return obj

    @classmethod
    def from_images(cls, preorder: Preorder, ring: Ring, images) -> LinearOperator:
        """Build from ``{source_pair: IncidenceElement}``; pairs may be labels."""
        coeffs = {}
        for src, elem in images.items():
            if isinstance(src[0], str):
                src = (preorder._idx(src[0]), preorder._idx(src[1]))
            for tgt, v in elem.coeffs.items():
                coeffs[(src, tgt)] = v
        return cls(preorder, ring, coeffs)

    @classmethod
    def from_vector(cls, preorder: Preorder, ring: Ring, vec) -> LinearOperator:
        pairs = preorder.pairs
        n = len(pairs)
        images = {}
        for a, src in enumerate(pairs):
            img = {}
            for b in range(n):
                v = vec[a * n + b]
                if v:
                    img[pairs[b]] = ring.canon(v)
            if img:
                images[src] = img
        return cls._raw(preorder, ring, images)

    @property
    def coeffs(self) -> dict:
        return {(s, t): v for s, img in self.images.items() for t, v in img.items()}

    def coefficient(self, src, tgt):
        """C^{ij}_{xy} for label pairs ``src = (i, j)``, ``tgt = (x, y)``."""
        idx = self.preorder._idx
        s = (idx(src[0]), idx(src[1]))
        t = (idx(tgt[0]), idx(tgt[1]))
        return self.images.get(s, {}).get(t, self.ring.zero)

    def _c(self, src, tgt):
        return self.images.get(src, {}).get(tgt, 0)

    def image(self, src) -> IncidenceElement:
        return IncidenceElement._raw(self.preorder, self.ring, dict(self.images.get(src, {})))

    def entries(self):
        """``(source_labels, target_labels, value)`` in flattening order."""
        P = self.preorder
        pos = P.position
        out = []
        for s in sorted(self.images, key=pos.__getitem__):
            img = self.images[s]
            for t in sorted(img, key=pos.__getitem__):
                out.append((P.label_pair(s), P.label_pair(t), img[t]))
        return out

    def to_vector(self) -> tuple:
        P = self.preorder
        n = P.basis_size
        z = self.ring.zero
        vec = [z] * (n * n)
        pos = P.position
        for s, img in self.images.items():
            base = pos[s] * n
            for t, v in img.items():
                vec[base + pos[t]] = v
        return tuple(vec)

    def is_zero(self) -> bool:
        return not self.images

    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if other.preorder != self.preorder:
            raise PreorderMismatch("operators live on different preorders")

    def combine(self, terms) -> LinearOperator:
        """sum of r * op over ``terms`` (pairs of scalar, operator)."""
        R = self.ring
        acc = defaultdict(lambda: defaultdict(int))
        for r, op in terms:
            self._check(op)
            r = R.canon(r)
            for s, img in op.images.items():
                row = acc[s]
                for t, v in img.items():
                    row[t] += r * v
        images = {}
        for s, row in acc.items():
            img = {t: R.canon(v) for t, v in row.items() if R.canon(v) != 0}
            if img:
                images[s] = img
        return LinearOperator._raw(self.preorder, R, images)

    def __add__(self, other):
        return self.combine([(1, self), (1, other)])

    def __sub__(self, other):
        return self.combine([(1, self), (-1, other)])

    def scale(self, r):
        return self.combine([(r, self)])

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return (
            self.preorder == other.preorder
            and self.ring == other.ring
            and self.images == other.images
        )

    def __repr__(self):
        fmt = self.ring.format
        body = "; ".join(f"D(e{s}) += {fmt(v)}*e{t}" for s, t, v in self.entries())
        return f"LinearOperator({body or '0'})"

    def apply(self, f: IncidenceElement) -> IncidenceElement:
        return apply(self, f)


def zero_operator(P: Preorder, R: Ring) -> LinearOperator:
    return LinearOperator._raw(P, R, {})


def apply(D: LinearOperator, f: IncidenceElement) -> IncidenceElement:
    if f.ring != D.ring:
        raise RingMismatch(f"{f.ring} vs {D.ring}")
    if f.preorder != D.preorder:
        raise PreorderMismatch("element and operator live on different preorders")
    acc = defaultdict(int)
    for s, a in f.coeffs.items():
        for t, v in D.images.get(s, {}).items():
            acc[t] += a * v
    R = D.ring
    out = {}
    for t, v in acc.items():
        v = R.canon(v)
        if v != 0:
            out[t] = v
    return IncidenceElement._raw(D.preorder, R, out)


def inner_operator(g: IncidenceElement) -> LinearOperator:
    """Inn_g : f -> [g, f]."""
    P, R = g.preorder, g.ring
    images = {}
    for s in P.pairs:
        img = commutator(g, basis_elem_idx(P, R, s)).coeffs
        if img:
            images[s] = img
    return LinearOperator._raw(P, R, images)


def transitive_operator(f: PairFunction) -> LinearOperator:
    """Delta_f : e_ij -> f(i, j) e_ij."""
    if not is_transitive(f):
        raise NotTransitive("Delta_f needs a transitive map")
    return LinearOperator._raw(f.preorder, f.ring, {p: {p: v} for p, v in f.values.items()})


# -- pointwise laws -----------------------------------------------------------


def _basis(D: LinearOperator):
    P, R = D.preorder, D.ring
    return {p: basis_elem_idx(P, R, p) for p in P.pairs}


def leibniz_defect(D: LinearOperator, a: IncidenceElement, b: IncidenceElement) -> IncidenceElement:
    """D(ab) - D(a) b - a D(b)."""
    return linear_combine([
        (1, apply(D, convolve(a, b))),
        (-1, convolve(apply(D, a), b)),
        (-1, convolve(a, apply(D, b))),
    ])


def is_derivation(D: LinearOperator) -> bool:
    """The Leibniz rule on every ordered pair of basis elements."""
    E = _basis(D)
    for a in E.values():
        for b in E.values():
            if not leibniz_defect(D, a, b).is_zero():
                return False
    return True


def is_jordan_derivation(D: LinearOperator) -> bool:
    """Squares of basis elements plus every symmetrised basis pair.

    The Jordan defect x -> D(x^2) - D(x)x - xD(x) is the quadratic form of
    the bilinear Leibniz defect, so it vanishes on all of I(X, R) exactly
    when these basis conditions hold.
    """
    E = list(_basis(D).values())
    for a, b in combinations_with_replacement(E, 2):
        d = leibniz_defect(D, a, b)
        if a is not b:
            d = d + leibniz_defect(D, b, a)
        if not d.is_zero():
            return False
    return True


@dataclass
class Violation:
    kind: str  # shape | tie | diagonal | antisymmetry | additivity
    indices: tuple
    message: str


@dataclass
class FormReport:
    conforms: bool
    violations: list = field(default_factory=list)
    back_coefficients: list = field(default_factory=list)
    advisory: bool = False

    def __bool__(self):
        return self.conforms


def _form_report(D: LinearOperator, allow_back: bool) -> FormReport:
    P, R = D.preorder, D.ring
    lab = P.elements
    C = D._c
    violations = []
    back = []
    for i, j in P.pairs:
        src = (i, j)
        img = D.images.get(src, {})
        tied = {}
        for x in P.down[i]:
            if x != i:
                tied[(x, j)] = C((i, i), (x, i))
        for y in P.up[j]:
            if y != j:
                tied[(i, y)] = C((j, j), (j, y))
        back_pos = (j, i) if allow_back and i != j and P.leq_idx(j, i) else None
        for tgt, v in img.items():
            if tgt == src or tgt in tied:
                continue
            if tgt == back_pos:
                back.append(((lab[i], lab[j]), (lab[j], lab[i]), v))
                continue
            violations.append(Violation(
                "shape", (lab[i], lab[j], lab[tgt[0]], lab[tgt[1]]),
                f"D(e_{lab[i]}{lab[j]}) has a term at e_{lab[tgt[0]]}{lab[tgt[1]]} outside the allowed form",
            ))
        if i != j:
            for tgt, expect in tied.items():
                got = img.get(tgt, 0)
                if R.canon(got - expect) != 0:
                    violations.append(Violation(
                        "tie", (lab[i], lab[j], lab[tgt[0]], lab[tgt[1]]),
                        f"coefficient of e_{lab[tgt[0]]}{lab[tgt[1]]} in D(e_{lab[i]}{lab[j]}) is "
                        f"{R.format(got)}, the diagonal images force {R.format(expect)}",
                    ))
    for i in range(len(P)):
        if R.canon(C((i, i), (i, i))) != 0:
            violations.append(Violation(
                "diagonal", (lab[i],), f"C^{{ii}}_{{ii}} = 0 fails at i={lab[i]}",
            ))
    for j, k in P.pairs:
        if j != k and R.canon(C((j, j), (j, k)) + C((k, k), (j, k))) != 0:
            violations.append(Violation(
                "antisymmetry", (lab[j], lab[k]),
                f"C^{{jj}}_{{jk}} + C^{{kk}}_{{jk}} = 0 fails at j={lab[j]}, k={lab[k]}",
            ))
    for i in range(len(P)):
        for j in P.up[i]:
            if j == i:
                continue
            for k in P.up[j]:
                if k == j:
                    continue
                lhs = C((i, j), (i, j)) + C((j, k), (j, k))
                if R.canon(lhs - C((i, k), (i, k))) != 0:
                    violations.append(Violation(
                        "additivity", (lab[i], lab[j], lab[k]),
                        f"C^{{ij}}_{{ij}} + C^{{jk}}_{{jk}} = C^{{ik}}_{{ik}} fails at "
                        f"i={lab[i]}, j={lab[j]}, k={lab[k]}",
                    ))
    return FormReport(not violations, violations, back)


def check_derivation_form(D: LinearOperator) -> FormReport:
    """Compare D against the derivation normal form and its two relations.

    A conforming D has D(e_ij) supported on e_xj (x strictly below i),
    e_ij and e_iy (y strictly above j), the outer coefficients copied from
    D(e_ii) and D(e_jj), with C^{jj}_{jk} + C^{kk}_{jk} = 0 and
    C^{ij}_{ij} additive along i <= j <= k.
    """
    return _form_report(D, allow_back=False)


def check_jordan_form(D: LinearOperator) -> FormReport:
    """As :func:`check_derivation_form` but tolerating a back term C^{ij}_{ji} e_ji.

    Nonzero back coefficients are listed in ``back_coefficients``. Over a
    ring with 2-torsion the report is flagged ``advisory``.
    """
    rep = _form_report(D, allow_back=True)
    rep.advisory = not D.ring.is_two_torsion_free()
    return rep


@dataclass
class HersteinReport:
    symmetric_product: bool  # D(ab+ba) expands
    triple: bool  # D(aba) = D(a)ba + aD(b)a + abD(a)
    symmetric_triple: bool  # D(abc+cba) expands

    def __bool__(self):
        return self.symmetric_product and self.triple and self.symmetric_triple


def herstein_check(D: LinearOperator, a, b, c) -> HersteinReport:
    m = convolve
    Da, Db, Dc = apply(D, a), apply(D, b), apply(D, c)
    ab, ba = m(a, b), m(b, a)
    one = apply(D, ab + ba) == (m(Da, b) + m(a, Db) + m(Db, a) + m(b, Da))
    aba = m(ab, a)
    two = apply(D, aba) == (m(m(Da, b), a) + m(m(a, Db), a) + m(ab, Da))
    abc, cba = m(ab, c), m(m(c, b), a)
    rhs = linear_combine([
        (1, m(m(Da, b), c)), (1, m(m(a, Db), c)), (1, m(ab, Dc)),
        (1, m(m(Dc, b), a)), (1, m(m(c, Db), a)), (1, m(m(c, b), Da)),
    ])
    three = apply(D, abc + cba) == rhs
    return HersteinReport(one, two, three)
