"""
Elements of the incidence algebra I(X, R) and their arithmetic.

An element is a sparse map from comparable index pairs ``(i, j)`` to
nonzero raw ring values. Labels are accepted wherever a caller names a
pair; internally everything is keyed by element positions.

    >>> from incidence.poset import chain
    >>> from incidence.scalar import QQ
    >>> P = chain(3)
    >>> e12 = basis_elem(P, QQ, "1", "2"); e23 = basis_elem(P, QQ, "2", "3")
    >>> (e12 * e23).entries()
    [('1', '3', Fraction(1, 1))]
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from incidence.errors import NotComparable, NotInvertible, PreorderMismatch, RingMismatch
from incidence.poset import Preorder
from incidence.scalar import RATIONALS, Ring, Scalar


class IncidenceElement:
    __slots__ = ("preorder", "ring", "coeffs")

    def __init__(self, preorder: Preorder, ring: Ring, coeffs=None):
        self.preorder = preorder
        self.ring = ring
        clean = {}
        if coeffs:
            leq = preorder.leq_idx
            for (i, j), v in coeffs.items():
                if not leq(i, j):
                    raise NotComparable(f"{preorder.label_pair((i, j))} is not a <=-pair")
                v = ring.canon(v)
                if v != 0:
                    clean[(i, j)] = v
        self.coeffs = clean

    @classmethod
    def _raw(cls, preorder, ring, coeffs):
        # trusted constructor: coeffs already canonical, nonzero and supported
        obj = cls.__new__(cls)
        obj.preorder = preorder
        obj.ring = ring
        obj.coeffs = coeffs
        return obj

    @classmethod
    def from_labels(cls, preorder, ring, values) -> IncidenceElement:
        """Build from ``{(x_label, y_label): value}``."""
        idx = preorder._idx
        return cls(preorder, ring, {(idx(x), idx(y)): v for (x, y), v in values.items()})

    def __getitem__(self, pair):
        x, y = pair
        key = (self.preorder._idx(x), self.preorder._idx(y))
        return self.coeffs.get(key, self.ring.zero)

    def scalar(self, x, y) -> Scalar:
        return Scalar(self.ring, self[x, y])

    def entries(self):
        """``(x, y, value)`` triples in basis order."""
        pos = self.preorder.position
        out = []
        for key in sorted(self.coeffs, key=pos.__getitem__):
            x, y = self.preorder.label_pair(key)
            out.append((x, y, self.coeffs[key]))
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, IncidenceElement):
            return NotImplemented
        return (
            self.preorder == other.preorder
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        ring = self.ring
        terms = [f"{ring.format(v)}*e[{x},{y}]" for x, y, v in self.entries()]
        return " + ".join(terms)

    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if other.preorder is not self.preorder and other.preorder != self.preorder:
            raise PreorderMismatch("elements live on different preorders")

    def __add__(self, other):
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other):
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, r) -> IncidenceElement:
        return linear_combine([(r, self)])

    def __mul__(self, other):
        if isinstance(other, IncidenceElement):
            return convolve(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)


def zero(P: Preorder, R: Ring) -> IncidenceElement:
    return IncidenceElement._raw(P, R, {})


def basis_elem(P: Preorder, R: Ring, x, y) -> IncidenceElement:
    i, j = P._idx(x), P._idx(y)
    if not P.leq_idx(i, j):
        raise NotComparable(f"{x} is not <= {y}")
    return IncidenceElement._raw(P, R, {(i, j): R.one})


def basis_elem_idx(P: Preorder, R: Ring, pair) -> IncidenceElement:
    return IncidenceElement._raw(P, R, {pair: R.one})


def delta(P: Preorder, R: Ring) -> IncidenceElement:
    return IncidenceElement._raw(P, R, {(i, i): R.one for i in range(len(P))})


def zeta(P: Preorder, R: Ring) -> IncidenceElement:
    return IncidenceElement._raw(P, R, {p: R.one for p in P.pairs})


def random_element(P: Preorder, R: Ring, rng, density: float = 1.0) -> IncidenceElement:
    coeffs = {}
    for p in P.pairs:
        if density >= 1.0 or rng.random() < density:
            v = R.random(rng)
            if v != 0:
                coeffs[p] = v
    return IncidenceElement._raw(P, R, coeffs)


def linear_combine(terms) -> IncidenceElement:
    """Sum of ``r * f`` over ``terms``; ``r`` may be raw, int or Scalar."""
    terms = list(terms)
    if not terms:
        raise ValueError("linear_combine needs at least one term")
    first = terms[0][1]
    R = first.ring
    acc = defaultdict(int)
    for r, f in terms:
        first._check(f)
        r = R.canon(r)
        if r == 0:
            continue
        for key, v in f.coeffs.items():
            acc[key] += r * v
    out = {}
    for key, v in acc.items():
        v = R.canon(v)
        if v != 0:
            out[key] = v
    return IncidenceElement._raw(first.preorder, R, out)


def convolve(f: IncidenceElement, g: IncidenceElement) -> IncidenceElement:
    """(fg)(x, y) = sum over x <= z <= y of f(x, z) g(z, y)."""
    f._check(g)
    rows = defaultdict(list)
    for (z, y), b in g.coeffs.items():
        rows[z].append((y, b))
    acc = defaultdict(int)
    for (x, z), a in f.coeffs.items():
        for y, b in rows.get(z, ()):
            acc[(x, y)] += a * b
    R = f.ring
    out = {}
    for key, v in acc.items():
        v = R.canon(v)
        if v != 0:
            out[key] = v
    return IncidenceElement._raw(f.preorder, R, out)


def commutator(g: IncidenceElement, f: IncidenceElement) -> IncidenceElement:
    """[g, f] = gf - fg."""
    return linear_combine([(1, convolve(g, f)), (-1, convolve(f, g))])


# -- inversion --------------------------------------------------------------


def _gauss_jordan(m):
    """(det, inverse) of an integer matrix over Q; inverse is None when det == 0."""
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(r == c)) for c in range(n)]
         for r, row in enumerate(m)]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0), None
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        a[c] = [v / piv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                k = a[r][c]
                a[r] = [u - k * w for u, w in zip(a[r], a[c])]
    return det, [row[n:] for row in a]


def _block_inverse(R: Ring, m):
    # raw values of every ring lift to Q; for residue rings and Z the
    # inverse is adj(m) * det^-1 with adj(m) = det * m^-1 integral
    det, inv_q = _gauss_jordan(m)
    if R.kind == RATIONALS:
        return inv_q
    det_r = R.canon(det)
    if not R.is_unit(det_r):
        return None
    dinv = R.inv(det_r)
    return [[R.mul(R.canon(det * v), dinv) for v in row] for row in inv_q]


def _class_order(P: Preorder):
    classes = P.class_indices()
    # a class has strictly fewer classes above it than anything below it
    above = [sum(1 for d in classes if P.leq_idx(c[0], d[0])) for c in classes]
    order = sorted(range(len(classes)), key=lambda k: above[k])
    return classes, order


def inverse(f: IncidenceElement) -> IncidenceElement:
    """Two-sided convolution inverse.

    Equivalence classes are ordered topologically; each diagonal block
    f|CxC is inverted over R and the strictly upper blocks are solved by
    back substitution, processing classes from the top of the order down.
    Raises NotInvertible naming the first singular class block.
    """
    P, R = f.preorder, f.ring
    classes, order = _class_order(P)
    get = f.coeffs.get
    h = {}
    block_inv = {}
    for k in order:
        c = classes[k]
        m = [[get((a, b), 0) for b in c] for a in c]
        binv = _block_inverse(R, m)
        if binv is None:
            labels = [P.elements[a] for a in c]
            raise NotInvertible(f"diagonal block on class {labels} is not invertible over {R}")
        block_inv[k] = binv
    # rows of h on class C need the rows of every class strictly above C
    for k in order:
        c = classes[k]
        binv = block_inv[k]
        above = [d for d in range(len(classes)) if d != k and P.leq_idx(c[0], classes[d][0])]
        cols = [y for d in above for y in classes[d]] + list(c)
        for y in cols:
            # rhs_a = delta(a, y) - sum over z strictly above class c of f(a, z) h(z, y)
            rhs = []
            for a in c:
                s = 1 if a == y else 0
                for d in above:
                    for z in classes[d]:
                        fa = get((a, z), 0)
                        if fa:
                            s -= fa * h.get((z, y), 0)
                rhs.append(s)
            for r, a in enumerate(c):
                v = R.canon(sum(binv[r][t] * rhs[t] for t in range(len(c))))
                if v != 0:
                    h[(a, y)] = v
    return IncidenceElement._raw(P, R, h)


def mobius(P: Preorder, R: Ring) -> IncidenceElement:
    return inverse(zeta(P, R))
