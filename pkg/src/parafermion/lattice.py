"""Exact integer and rational linear algebra.

Hermite and Smith normal forms over the integers, exact matrix inversion
over the rationals, and an incremental fraction-free echelon used for
rank computations on sparse vectors.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

IntMatrix = List[List[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    return [
        [sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def rational_inverse(m: Sequence[Sequence]) -> List[List[Fraction]]:
    """Gauss-Jordan inverse over Q. Raises ValueError if singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def determinant(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def hermite_basis(generators: Iterable[Sequence[int]], dim: int) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by ``generators``.

    Returns the nonzero rows ``H`` (upper triangular with positive pivots,
    entries above each pivot reduced into ``[0, pivot)``).  For a full-rank
    lattice ``H[i][i]`` is the pivot of row ``i``.
    """
    rows = [list(map(int, g)) for g in generators if any(g)]
    basis: IntMatrix = []
    col = 0
    while rows and col < dim:
        nz = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not nz:
            col += 1
            continue
        # Euclid on column `col` until one row carries the gcd
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            new = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col] != 0:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            nz = new
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
        rows = rest
        col += 1
    # reduce entries above pivots
    for i in range(len(basis)):
        pc = next(c for c, x in enumerate(basis[i]) if x)
        for j in range(i):
            q = basis[j][pc] // basis[i][pc]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return basis


def reduce_mod_hermite(v: Sequence[int], basis: IntMatrix) -> List[int]:
    """Canonical representative of ``v`` modulo the full-rank lattice ``basis``.

    Each coordinate ends up in ``[0, pivot)``; two vectors give the same
    output iff they differ by a lattice vector.
    """
    v = list(v)
    for row in basis:
        pc = next(c for c, x in enumerate(row) if x)
        q = v[pc] // row[pc]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return v


def in_lattice(v: Sequence[int], basis: IntMatrix) -> bool:
    return not any(reduce_mod_hermite(v, basis))


def smith_normal_form(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``D = U M V`` of a square integer matrix.

    Returns ``(D, U, U_inv, V)`` with ``U``, ``V`` unimodular and ``D``
    diagonal with nonnegative entries, each dividing the next.
    """
    n = len(m)
    a = [list(map(int, row)) for row in m]
    u = identity(n)
    u_inv = identity(n)
    v = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]
        for row in u_inv:
            row[src] += q * row[dst]

    def add_col(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    def neg_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for row in u_inv:
            row[i] = -row[i]

    for t in range(n):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, n) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, n):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(i, t, q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(j, t, q)
                if a[t][j]:
                    done = False
            if not done:
                continue
            # divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            neg_row(t)
    return a, u, u_inv, v


class SparseEchelon:
    """Incremental fraction-free row echelon over sparse integer vectors.

    Vectors are mappings ``key -> number``; rational entries are cleared to
    primitive integer rows before elimination, so no denominators are ever
    carried.  Keys must be mutually comparable; the smallest key of a row
    is its pivot.
    """

    def __init__(self) -> None:
        self._rows: Dict[Hashable, Dict[Hashable, int]] = {}
        self.members: list = []

    def __len__(self) -> int:
        return len(self._rows)

    @staticmethod
    def _primitive(vec) -> Dict[Hashable, int]:
        items = [(k, Fraction(c)) for k, c in vec.items() if c]
        if not items:
            return {}
        den = 1
        for _, c in items:
            den = den * c.denominator // gcd(den, c.denominator)
        row = {k: int(c * den) for k, c in items}
        g = 0
        for c in row.values():
            g = gcd(g, c)
        return {k: c // g for k, c in row.items()}

    def reduce(self, vec) -> Dict[Hashable, int]:
        row = self._primitive(vec)
        while row:
            hits = [k for k in row if k in self._rows]
            if not hits:
                break
            # smallest pivot first: elimination only introduces larger keys
            hit = min(hits)
            piv = self._rows[hit]
            a, b = piv[hit], row[hit]
            new: Dict[Hashable, int] = {}
            for k, c in row.items():
                new[k] = a * c
            for k, c in piv.items():
                x = new.get(k, 0) - b * c
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            g = 0
            for c in new.values():
                g = gcd(g, c)
            row = {k: c // g for k, c in new.items()} if g > 1 else new
        return row

    def insert(self, vec, member=None) -> bool:
        """Add ``vec``; return True iff it was independent of the rows so far."""
        row = self.reduce(vec)
        if not row:
            return False
        pivot = min(row)
        self._rows[pivot] = row
        self.members.append(vec if member is None else member)
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)


def rank(vectors: Iterable) -> int:
    e = SparseEchelon()
    return sum(e.insert(v) for v in vectors)
