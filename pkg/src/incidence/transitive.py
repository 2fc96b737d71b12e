"""
Functions on the relation <= and the cocycle law.

A map ``f`` on comparable pairs is *transitive* when
``f(i, j) + f(j, k) = f(i, k)`` whenever ``i <= j <= k``; it is *trivial*
when ``f(i, j) = sigma(i) - sigma(j)`` for some ``sigma`` on elements.
:func:`trivial_witness` decides triviality by propagating ``sigma`` along
a spanning forest of the comparability graph, then checking every pair.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from incidence.errors import NotComparable, NotTransitive, PreorderMismatch, RingMismatch
from incidence.poset import Preorder
from incidence.scalar import Ring


class PairFunction:
    """Any map from <=-pairs to R; zeros are implicit."""

    def __init__(self, preorder: Preorder, ring: Ring, values=None):
        self.preorder = preorder
        self.ring = ring
        clean = {}
        for (i, j), v in (values or {}).items():
            if not preorder.leq_idx(i, j):
                raise NotComparable(f"{preorder.label_pair((i, j))} is not a <=-pair")
            v = ring.canon(v)
            if v != 0:
                clean[(i, j)] = v
        self.values = clean

    @classmethod
    def from_labels(cls, preorder: Preorder, ring: Ring, values):
        idx = preorder._idx
        return cls(preorder, ring, {(idx(x), idx(y)): v for (x, y), v in values.items()})

    def __call__(self, i: int, j: int):
        return self.values.get((i, j), 0)

    def value(self, x, y):
        P = self.preorder
        return self.values.get((P._idx(x), P._idx(y)), self.ring.zero)

    def entries(self):
        P = self.preorder
        keys = sorted(self.values, key=P.position.__getitem__)
        return [(*P.label_pair(k), self.values[k]) for k in keys]

    def to_vector(self):
        return tuple(self.values.get(p, self.ring.zero) for p in self.preorder.pairs)

    def __eq__(self, other):
        if not isinstance(other, PairFunction):
            return NotImplemented
        return (
            self.preorder == other.preorder
            and self.ring == other.ring
            and self.values == other.values
        )

    def __repr__(self):
        body = ", ".join(f"({x},{y}): {self.ring.format(v)}" for x, y, v in self.entries())
        return f"{type(self).__name__}({{{body}}})"


class TransitiveMap(PairFunction):
    """A :class:`PairFunction` that satisfies the cocycle law (checked)."""

    def __init__(self, preorder: Preorder, ring: Ring, values=None):
        super().__init__(preorder, ring, values)
        bad = cocycle_violations(self)
        if bad:
            raise NotTransitive(f"cocycle law fails at {bad[0]}")

    @classmethod
    def from_vector(cls, preorder: Preorder, ring: Ring, vec):
        return cls(preorder, ring, dict(zip(preorder.pairs, vec)))


@dataclass(frozen=True)
class SigmaWitness:
    preorder: Preorder
    ring: Ring
    sigma: tuple  # raw value per element position

    def __getitem__(self, x):
        return self.sigma[self.preorder._idx(x)]

    def as_dict(self):
        return dict(zip(self.preorder.elements, self.sigma))


def composable_triples(P: Preorder):
    for i in range(len(P)):
        for j in P.up[i]:
            for k in P.up[j]:
                yield i, j, k


def cocycle_violations(f: PairFunction) -> list[tuple]:
    """Label triples (i, j, k) with i <= j <= k where the cocycle law fails."""
    P, R = f.preorder, f.ring
    bad = []
    for i, j, k in composable_triples(P):
        if R.canon(f(i, j) + f(j, k) - f(i, k)) != 0:
            bad.append((P.elements[i], P.elements[j], P.elements[k]))
    return bad


def is_transitive(f: PairFunction) -> bool:
    return not cocycle_violations(f)


def from_sigma(sigma: SigmaWitness) -> TransitiveMap:
    P, R = sigma.preorder, sigma.ring
    s = sigma.sigma
    return TransitiveMap(P, R, {(i, j): R.sub(s[i], s[j]) for i, j in P.pairs})


def sigma_from_values(P: Preorder, R: Ring, values) -> SigmaWitness:
    """``values`` maps labels to raw/int values; missing labels are 0."""
    return SigmaWitness(P, R, tuple(R.canon(values.get(e, 0)) for e in P.elements))


def find_witness(f: PairFunction):
    """Return ``(sigma, None)`` if f is trivial, else ``(None, violated_pair)``.

    The first element of each comparability component is anchored at 0.
    """
    if not is_transitive(f):
        raise NotTransitive("trivial_witness needs a transitive map")
    P, R = f.preorder, f.ring
    sigma = [None] * len(P)
    for comp in P.component_indices():
        root = comp[0]
        sigma[root] = R.zero
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in P.up[i]:
                if sigma[j] is None:
                    sigma[j] = R.sub(sigma[i], R.canon(f(i, j)))
                    queue.append(j)
            for j in P.down[i]:
                if sigma[j] is None:
                    sigma[j] = R.add(sigma[i], R.canon(f(j, i)))
                    queue.append(j)
    for i, j in P.pairs:
        if R.canon(f(i, j)) != R.sub(sigma[i], sigma[j]):
            return None, P.label_pair((i, j))
    return SigmaWitness(P, R, tuple(sigma)), None


def trivial_witness(f: PairFunction) -> SigmaWitness | None:
    return find_witness(f)[0]


def cocycle_rows(P: Preorder) -> list[dict]:
    """Sparse rows of the linear system f(i,j) + f(j,k) - f(i,k) = 0."""
    pos = P.position
    rows = []
    seen = set()
    for i, j, k in composable_triples(P):
        row = {}
        for key, c in (((i, j), 1), ((j, k), 1), ((i, k), -1)):
            p = pos[key]
            row[p] = row.get(p, 0) + c
        row = {p: c for p, c in row.items() if c}
        key = frozenset(row.items())
        if row and key not in seen:
            seen.add(key)
            rows.append(row)
    return rows


def check_same(f: PairFunction, g: PairFunction):
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")
    if f.preorder != g.preorder:
        raise PreorderMismatch("maps live on different preorders")
