"""
Brute-force reference for space dimensions.

Shares no code with the package solver: elements are dense sympy matrices,
the linear system is assembled column by column by applying every
single-coefficient operator, and ranks come from sympy's DomainMatrix.
The Jordan system is built from the defining identity D(x^2) = D(x)x + xD(x)
evaluated at x = e_a and x = e_a + e_b.
"""

from itertools import combinations

from sympy import GF, QQ, zeros
from sympy.polys.matrices import DomainMatrix


def _basis(leq):
    n = len(leq)
    return [(i, j) for i in range(n) for j in range(n) if leq[i][j]]


def _closure(n, rels):
    leq = [[i == j or (i, j) in rels for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if leq[i][k] and leq[k][j]:
                    leq[i][j] = True
    return leq


def _unit(n, p):
    m = zeros(n, n)
    m[p[0], p[1]] = 1
    return m


def _apply(D, B, n, x):
    """D is a dict basis index -> image matrix; x is a dense matrix."""
    out = zeros(n, n)
    for a, (i, j) in enumerate(B):
        if x[i, j] != 0:
            out += x[i, j] * D[a]
    return out


def _system(n, rels, jordan):
    leq = _closure(n, rels)
    B = _basis(leq)
    m = len(B)
    E = [_unit(n, p) for p in B]
    if jordan:
        probes = [E[a] for a in range(m)] + [E[a] + E[b] for a, b in combinations(range(m), 2)]
    columns = []
    for s in range(m):
        for t in range(m):
            D = {a: zeros(n, n) for a in range(m)}
            D[s] = E[t]
            col = []
            if jordan:
                for x in probes:
                    d = _apply(D, B, n, x * x) - _apply(D, B, n, x) * x - x * _apply(D, B, n, x)
                    col.extend(d)
            else:
                for a in range(m):
                    for b in range(m):
                        d = (_apply(D, B, n, E[a] * E[b]) - D[a] * E[b] - E[a] * D[b])
                        col.extend(d)
            columns.append(col)
    rows = [list(r) for r in zip(*columns)]
    return rows, m * m


def nullity(n, rels, modulus=None, jordan=False):
    rows, unknowns = _system(n, rels, jordan)
    dom = QQ if modulus is None else GF(modulus)
    M = DomainMatrix([[dom(int(v)) for v in r] for r in rows], (len(rows), unknowns), dom)
    return unknowns - M.rank()


if __name__ == "__main__":
    cases = {
        "C2": (2, {(0, 1)}),
        "C3": (3, {(0, 1), (1, 2)}),
        "A3": (3, set()),
        "D4": (4, {(0, 1), (0, 2), (1, 3), (2, 3)}),
        "K22": (4, {(0, 2), (0, 3), (1, 2), (1, 3)}),
        "M2": (2, {(0, 1), (1, 0)}),
        "M3": (3, {(0, 1), (1, 2), (2, 0)}),
        "P6": (3, {(0, 1), (1, 0), (0, 2)}),
    }
    for name, (n, rels) in cases.items():
        print(name, [nullity(n, rels, p, j) for p in (None, 3, 2) for j in (False, True)])
