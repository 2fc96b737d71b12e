"""
Exact kernels, row spaces and membership tests.

Matrices are stored as sparse rows (``dict`` column -> raw value). Three
elimination paths exist:

* prime fields: sparse reduced row echelon form mod p;
* rationals: fraction-free integer elimination (rows are scaled to
  primitive integer vectors, so no Fraction appears until the kernel is
  read off);
* integers: the same integer echelon form, then unimodular column
  reduction of that (Q-row-equivalent) matrix. The transforms of the
  columns that vanish form a Z-basis of the integer kernel, which is
  saturated by construction because ker_Z M = Z^n intersected with ker_Q M
  depends only on the rational row space. The basis is returned in
  Hermite normal form.

Pivoting is deterministic (first nonzero column), so bases are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

from incidence.errors import DimensionMismatch, RingMismatch, UnsupportedRing
from incidence.scalar import INTEGERS, RATIONALS, Ring


@dataclass
class ExactMatrix:
    ring: Ring
    rows: int
    cols: int
    entries: list = field(default_factory=list)  # one sparse dict per row

    @classmethod
    def from_dense(cls, ring: Ring, rows) -> ExactMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        sparse = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix")
            sparse.append({c: ring.canon(v) for c, v in enumerate(r) if ring.canon(v) != 0})
        return cls(ring, len(rows), ncols, sparse)

    @classmethod
    def from_sparse(cls, ring: Ring, ncols: int, rows) -> ExactMatrix:
        sparse = []
        for r in rows:
            d = {}
            for c, v in r.items():
                if not 0 <= c < ncols:
                    raise DimensionMismatch(f"column {c} outside 0..{ncols - 1}")
                v = ring.canon(v)
                if v != 0:
                    d[c] = v
            sparse.append(d)
        return cls(ring, len(sparse), ncols, sparse)

    def dense(self):
        z = self.ring.zero
        return [[r.get(c, z) for c in range(self.cols)] for r in self.entries]

    def mul_vector(self, v):
        R = self.ring
        return [R.canon(sum(a * v[c] for c, a in row.items())) for row in self.entries]


def _check_ring(ring: Ring):
    if ring.is_residue and not ring.is_field:
        raise UnsupportedRing(f"composite modulus {ring} needs Smith form over Z/n; not supported")


# -- sparse row helpers -------------------------------------------------------


def _axpy(dst: dict, q, src: dict):
    """dst -= q * src, dropping zeros."""
    for c, v in src.items():
        nv = dst.get(c, 0) - q * v
        if nv:
            dst[c] = nv
        else:
            dst.pop(c, None)


def _axpy_mod(dst: dict, q, src: dict, p: int):
    for c, v in src.items():
        nv = (dst.get(c, 0) - q * v) % p
        if nv:
            dst[c] = nv
        else:
            dst.pop(c, None)


def _primitive(row: dict) -> dict:
    """Divide by the content and make the leading entry positive."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _integer_rows(rows) -> list[dict]:
    out = []
    for row in rows:
        if not row:
            continue
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        if den == 1:
            r = {c: int(v) for c, v in row.items() if v}
        else:
            r = {c: int(v * den) for c, v in row.items() if v}
        if r:
            out.append(r)
    return out


def _dedupe(rows) -> list[dict]:
    seen = set()
    out = []
    for r in rows:
        key = frozenset(r.items())
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def rref_mod_p(rows, p: int) -> dict[int, dict]:
    """Pivot column -> reduced row with pivot 1, over F_p."""
    piv: dict[int, dict] = {}
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            c = min(r)
            prow = piv.get(c)
            if prow is None:
                inv = pow(r[c], -1, p)
                piv[c] = {cc: vv * inv % p for cc, vv in r.items()}
                break
            _axpy_mod(r, r[c], prow, p)
    cols = sorted(piv)
    for k in range(len(cols) - 1, -1, -1):
        c = cols[k]
        prow = piv[c]
        for c2 in cols[:k]:
            r = piv[c2]
            f = r.get(c)
            if f:
                _axpy_mod(r, f, prow, p)
    return piv


def rref_int(rows) -> dict[int, dict]:
    """Fraction-free reduced echelon form of integer rows.

    Each returned row is primitive with a positive pivot, and every other
    pivot column is zero in it; dividing by the pivot gives the RREF over Q.
    """
    piv: dict[int, dict] = {}
    for row in _dedupe(_integer_rows(rows)):
        r = dict(row)
        while r:
            r = _primitive(r)
            c = min(r)
            prow = piv.get(c)
            if prow is None:
                piv[c] = r
                break
            a, d = r[c], prow[c]
            g = gcd(a, d)
            scale = d // g
            if scale != 1:
                r = {cc: vv * scale for cc, vv in r.items()}
            _axpy(r, a // g, prow)
    cols = sorted(piv)
    for k in range(len(cols) - 1, -1, -1):
        c = cols[k]
        prow = piv[c]
        d = prow[c]
        for c2 in cols[:k]:
            r = piv[c2]
            a = r.get(c)
            if a:
                g = gcd(a, d)
                scale = d // g
                if scale != 1:
                    r = {cc: vv * scale for cc, vv in r.items()}
                _axpy(r, a // g, prow)
                piv[c2] = _primitive(r)
    return piv


def _echelon(ring: Ring, rows) -> dict[int, dict]:
    if ring.is_residue:
        return rref_mod_p(rows, ring.modulus)
    return rref_int(rows)


def rank(M: ExactMatrix) -> int:
    _check_ring(M.ring)
    return len(_echelon(M.ring, M.entries))


# -- integer lattices ---------------------------------------------------------


def hnf(vectors) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by integer ``vectors``.

    Pivots are positive and entries above a pivot lie in [0, pivot).
    Zero rows are dropped.
    """
    A = [list(map(int, v)) for v in vectors if any(v)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(A[i][c]), i))
            A[r], A[i0] = A[i0], A[r]
            pr = A[r]
            piv = pr[c]
            clean = True
            for i in range(r + 1, m):
                a = A[i][c]
                if a:
                    q = a // piv
                    A[i] = [x - q * y for x, y in zip(A[i], pr)]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        pr = A[r]
        piv = pr[c]
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], pr)]
        r += 1
    return [row for row in A[:r]]


def _column_reduce(columns):
    """Unimodular column reduction of sparse integer columns.

    Returns ``(pivots, kernel)``: ``pivots`` is a list of
    ``(row, column, transform)`` in processing order, each column vanishing
    on every earlier processed row; ``kernel`` holds the transforms of the
    columns reduced to zero, a Z-basis of the integer kernel.
    """
    active = {k: (dict(col), {k: 1}) for k, col in enumerate(columns)}
    row_ids = sorted({r for col in columns for r in col})
    pivots = []
    for r in row_ids:
        cand = [k for k in sorted(active) if active[k][0].get(r)]
        while len(cand) > 1:
            k0 = min(cand, key=lambda k: (abs(active[k][0][r]), k))
            col0, tr0 = active[k0]
            a0 = col0[r]
            for k in cand:
                if k == k0:
                    continue
                col, tr = active[k]
                q = col[r] // a0
                _axpy(col, q, col0)
                _axpy(tr, q, tr0)
            cand = [k for k in cand if active[k][0].get(r)]
        if cand:
            col, tr = active.pop(cand[0])
            pivots.append((r, col, tr))
    kernel = [active[k][1] for k in sorted(active)]
    return pivots, kernel


def _dense(d: dict, n: int, zero=0):
    return tuple(d.get(c, zero) for c in range(n))


# -- spans --------------------------------------------------------------------


@dataclass(frozen=True)
class SpanBasis:
    """Generators of a submodule of R^dim.

    Kernels over a field come back linearly independent; over Z they are a
    basis of the saturated lattice, in Hermite normal form.
    """

    ring: Ring
    dim: int
    vectors: tuple = ()

    def __len__(self):
        return len(self.vectors)

    @property
    def rank(self) -> int:
        return len(self.reduced)

    @cached_property
    def reduced(self) -> tuple:
        """Canonical generators: RREF rows over a field, HNF rows over Z."""
        return row_space_vectors(self.ring, self.dim, self.vectors)


def row_space_vectors(ring: Ring, dim: int, vectors) -> tuple:
    _check_ring(ring)
    rows = [{c: v for c, v in enumerate(vec) if v} for vec in vectors]
    if ring.kind == INTEGERS:
        return tuple(tuple(r) for r in hnf(vectors))
    piv = _echelon(ring, rows)
    out = []
    for c in sorted(piv):
        r = piv[c]
        if ring.kind == RATIONALS:
            d = r[c]
            out.append(_dense({cc: Fraction(v, d) for cc, v in r.items()}, dim, Fraction(0)))
        else:
            out.append(_dense(r, dim))
    return tuple(out)


def row_space(ring: Ring, dim: int, vectors) -> SpanBasis:
    """Independent generators (field) or an HNF lattice basis (Z) of the span."""
    vecs = row_space_vectors(ring, dim, [tuple(ring.canon(x) for x in v) for v in vectors])
    return SpanBasis(ring, dim, vecs)


def kernel(M: ExactMatrix) -> SpanBasis:
    R = M.ring
    _check_ring(R)
    n = M.cols
    if R.is_residue:
        p = R.modulus
        piv = rref_mod_p(M.entries, p)
        free = [c for c in range(n) if c not in piv]
        vecs = []
        for f in free:
            v = {f: 1}
            for c, row in piv.items():
                a = row.get(f)
                if a:
                    v[c] = -a % p
            vecs.append(_dense(v, n))
        return SpanBasis(R, n, tuple(vecs))
    piv = rref_int(M.entries)
    if R.kind == RATIONALS:
        free = [c for c in range(n) if c not in piv]
        vecs = []
        for f in free:
            v = {f: Fraction(1)}
            for c, row in piv.items():
                a = row.get(f)
                if a:
                    v[c] = Fraction(-a, row[c])
            vecs.append(_dense(v, n, Fraction(0)))
        return SpanBasis(R, n, tuple(vecs))
    columns = [dict() for _ in range(n)]
    for i, c in enumerate(sorted(piv)):
        for cc, v in piv[c].items():
            columns[cc][i] = v
    _, ker = _column_reduce(columns)
    basis = hnf([_dense(t, n) for t in ker])
    return SpanBasis(R, n, tuple(tuple(r) for r in basis))


def _compatible(ring: Ring, dim: int, A: SpanBasis):
    if A.ring != ring:
        raise RingMismatch(f"{ring} vs {A.ring}")
    if A.dim != dim:
        raise DimensionMismatch(f"{dim} vs {A.dim}")


def _reduce_against(ring: Ring, v, reduced):
    v = list(v)
    if ring.kind == INTEGERS:
        for row in reduced:
            c = next(k for k, x in enumerate(row) if x)
            a = v[c]
            if a:
                if a % row[c]:
                    return None
                q = a // row[c]
                v = [x - q * y for x, y in zip(v, row)]
        return v
    for row in reduced:
        c = next(k for k, x in enumerate(row) if x)
        a = v[c]
        if a:
            v = [ring.sub(x, ring.mul(a, y)) for x, y in zip(v, row)]
    return v


def in_span(v, A: SpanBasis) -> bool:
    R = A.ring
    v = [R.canon(x) for x in v]
    _compatible(R, len(v), A)
    rest = _reduce_against(R, v, A.reduced)
    return rest is not None and not any(rest)


def span_equal(A: SpanBasis, B: SpanBasis) -> bool:
    _compatible(A.ring, A.dim, B)
    if A.ring.kind == INTEGERS:
        return A.reduced == B.reduced
    return all(in_span(v, B) for v in A.vectors) and all(in_span(v, A) for v in B.vectors)


def solve(ring: Ring, columns, target):
    """Coefficients ``x`` with sum_k x[k] * columns[k] == target, or None.

    ``columns`` and ``target`` are dense sequences of raw values.
    """
    _check_ring(ring)
    k = len(columns)
    n = len(target)
    for col in columns:
        if len(col) != n:
            raise DimensionMismatch("column length differs from target length")
    rows = []
    for t in range(n):
        r = {c: columns[c][t] for c in range(k) if columns[c][t]}
        if target[t]:
            r[k] = target[t]
        if r:
            rows.append(r)
    if ring.kind == INTEGERS:
        cols = [{t: int(columns[c][t]) for t in range(n) if columns[c][t]} for c in range(k)]
        pivots, _ = _column_reduce(cols)
        resid = {t: int(target[t]) for t in range(n) if target[t]}
        x = {}
        for r, col, tr in pivots:
            a = resid.get(r, 0)
            if a % col[r]:
                return None
            y = a // col[r]
            if y:
                _axpy(resid, y, col)
                _axpy(x, -y, tr)
        if resid:
            return None
        return [x.get(c, 0) for c in range(k)]
    piv = _echelon(ring, rows)
    if k in piv:
        return None
    x = [ring.zero] * k
    for c, row in piv.items():
        a = row.get(k)
        if a:
            x[c] = Fraction(a, row[c]) if ring.kind == RATIONALS else a
    return x
