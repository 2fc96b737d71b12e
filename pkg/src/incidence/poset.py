"""
Finite preordered sets.

A preorder is read from a small line-oriented DSL::

    # the crown
    elements: 1 2 3 4
    relations: 1<3 1<4
    relations: 2<3 2<4

Only generating relations need to be listed; the reflexive-transitive
closure is computed. Element order is declaration order and every
enumeration in the package (basis, intervals, classes) follows it.
"""

from __future__ import annotations

import hashlib
from collections import deque

from incidence.errors import DuplicateElement, ParseError, SizeLimit, UnknownElement

MAX_BASIS = 4096


def warshall(n: int, pairs) -> list[list[bool]]:
    """Reflexive-transitive closure of ``pairs`` on range(n) as a bool matrix."""
    leq = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        leq[i][j] = True
    for k in range(n):
        row_k = leq[k]
        for i in range(n):
            if leq[i][k]:
                row_i = leq[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return leq


class Preorder:
    """A finite set of labels with a reflexive, transitive relation.

    ``pairs`` lists the basis pairs ``(x, y)`` with ``x <= y`` as index
    pairs in lexicographic order of element positions; ``position`` maps
    such a pair back to its basis index.
    """

    def __init__(self, elements, relations=()):
        elements = tuple(elements)
        index = {}
        for k, e in enumerate(elements):
            if e in index:
                raise DuplicateElement(f"element {e!r} declared twice")
            index[e] = k
        self.elements = elements
        self.index = index
        n = len(elements)
        idx_pairs = [(self._idx(a), self._idx(b)) for a, b in relations]
        self._leq = warshall(n, idx_pairs)
        self.pairs = tuple(
            (i, j) for i in range(n) for j in range(n) if self._leq[i][j]
        )
        if len(self.pairs) > MAX_BASIS:
            raise SizeLimit(f"|B| = {len(self.pairs)} exceeds {MAX_BASIS}")
        self.position = {p: k for k, p in enumerate(self.pairs)}
        self.up = [tuple(j for j in range(n) if self._leq[i][j]) for i in range(n)]
        self.down = [tuple(i for i in range(n) if self._leq[i][j]) for j in range(n)]

    def _idx(self, e) -> int:
        try:
            return self.index[e]
        except KeyError:
            raise UnknownElement(f"unknown element {e!r}") from None

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Preorder({self.to_dsl()!r})"

    def __eq__(self, other):
        if not isinstance(other, Preorder):
            return NotImplemented
        return self.elements == other.elements and self.pairs == other.pairs

    def __hash__(self):
        return hash((self.elements, self.pairs))

    @property
    def basis_size(self) -> int:
        return len(self.pairs)

    def leq(self, x, y) -> bool:
        return self._leq[self._idx(x)][self._idx(y)]

    def leq_idx(self, i: int, j: int) -> bool:
        return self._leq[i][j]

    def label_pair(self, pair):
        i, j = pair
        return self.elements[i], self.elements[j]

    def basis_labels(self):
        return [self.label_pair(p) for p in self.pairs]

    # -- queries ----------------------------------------------------------

    def interval(self, x, y) -> list:
        i, j = self._idx(x), self._idx(y)
        if not self._leq[i][j]:
            return []
        return [self.elements[k] for k in self.up[i] if self._leq[k][j]]

    def strict_below(self, x) -> list:
        """L_x: elements i with i <= x and i != x."""
        i = self._idx(x)
        return [self.elements[k] for k in self.down[i] if k != i]

    def strict_above(self, x) -> list:
        """R_x: elements j with x <= j and j != x."""
        i = self._idx(x)
        return [self.elements[k] for k in self.up[i] if k != i]

    def class_indices(self) -> list[tuple[int, ...]]:
        seen = set()
        classes = []
        for i in range(len(self)):
            if i in seen:
                continue
            cls = tuple(j for j in self.up[i] if self._leq[j][i])
            seen.update(cls)
            classes.append(cls)
        return classes

    def equivalence_classes(self) -> list[list]:
        return [[self.elements[k] for k in c] for c in self.class_indices()]

    def is_partial_order(self) -> bool:
        return all(len(c) == 1 for c in self.class_indices())

    def component_indices(self) -> list[list[int]]:
        n = len(self)
        seen = [False] * n
        comps = []
        for start in range(n):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            queue = deque([start])
            while queue:
                i = queue.popleft()
                for j in self.up[i] + self.down[i]:
                    if not seen[j]:
                        seen[j] = True
                        comp.append(j)
                        queue.append(j)
            comps.append(sorted(comp))
        return comps

    def comparability_components(self) -> list[list]:
        return [[self.elements[k] for k in c] for c in self.component_indices()]

    # -- serialisation ----------------------------------------------------

    def to_dsl(self) -> str:
        """Canonical rendering: every strict pair of the closure, basis order."""
        lines = ["elements: " + " ".join(self.elements)]
        rel = [f"{self.elements[i]}<{self.elements[j]}" for i, j in self.pairs if i != j]
        if rel:
            lines.append("relations: " + " ".join(rel))
        return "\n".join(lines) + "\n"

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_dsl().encode()).hexdigest()


def parse_preorder(text: str) -> Preorder:
    elements = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        head = head.strip()
        if not sep or head not in ("elements", "relations"):
            raise ParseError(f"line {lineno}: expected 'elements:' or 'relations:'")
        toks = rest.split()
        if head == "elements":
            if elements is not None:
                raise ParseError(f"line {lineno}: second 'elements:' line")
            for t in toks:
                if "<" in t:
                    raise ParseError(f"line {lineno}: '<' not allowed in label {t!r}")
            elements = toks
        else:
            for t in toks:
                a, sep, b = t.partition("<")
                if not sep or not a or not b or "<" in b:
                    raise ParseError(f"line {lineno}: bad relation {t!r}")
                relations.append((a, b))
    if elements is None:
        raise ParseError("missing 'elements:' line")
    return Preorder(elements, relations)


def chain(n: int) -> Preorder:
    labels = [str(k) for k in range(1, n + 1)]
    return Preorder(labels, zip(labels, labels[1:]))


def antichain(n: int) -> Preorder:
    return Preorder([str(k) for k in range(1, n + 1)])


def full_preorder(n: int) -> Preorder:
    """Every pair comparable; the incidence algebra is the full matrix ring."""
    labels = [chr(ord("a") + k) for k in range(n)]
    return Preorder(labels, [(a, b) for a in labels for b in labels])
