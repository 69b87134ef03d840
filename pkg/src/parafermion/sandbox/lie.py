"""Structure constants of a simply-laced simple Lie algebra.

Basis: ``h_i = t_{alpha_i}`` for the simple roots (indices ``0..l-1``)
followed by one root vector ``x_alpha`` per root.  Root vectors come from a
bimultiplicative sign cocycle ``eps`` on ``Q`` with
``eps(a, b) eps(b, a) = (-1)^<a, b>``; with ``x_alpha = e^alpha`` for
positive ``alpha`` and ``x_{-alpha} = eps(alpha, -alpha) e^{-alpha}`` one gets
``[x_alpha, x_{-alpha}] = t_alpha`` and ``<x_alpha, x_{-alpha}> = 1``.
All structure constants are integers.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, List, Tuple

from .. import lattice
from ..rootsys import AlgebraSpec, RootSystem, RootSystemError, build_root_system


class NotSimplyLacedError(RootSystemError):
    pass


class LieData:
    def __init__(self, rs: RootSystem):
        if any(rs.norm2(a) != 2 for a in rs.roots):
            raise NotSimplyLacedError(f"{rs.spec.name} is not simply laced")
        self.rs = rs
        l = self.rank = rs.rank
        self.B = [[int(x) for x in row] for row in rs.form_matrix]
        self.roots: List[Tuple[int, ...]] = [a.sr_ints() for a in rs.roots]
        self.dim = l + len(self.roots)
        self.root_index: Dict[Tuple[int, ...], int] = {r: l + j for j, r in enumerate(self.roots)}
        self.weights: List[Tuple[int, ...]] = [(0,) * l] * l + self.roots
        self.positive = [self.root_index[a.sr_ints()] for a in rs.positive_roots]
        self._brackets = [[self._bracket(a, b) for b in range(self.dim)] for a in range(self.dim)]
        binv = lattice.rational_inverse(self.B)
        # dual basis pairs (a, b, c): sum c * a b is the Casimir element
        self.cartan_pairs = [(i, j, binv[i][j]) for i in range(l) for j in range(l) if binv[i][j]]
        self.casimir_pairs = self.cartan_pairs + [(g, self.opposite(g), Fraction(1)) for g in range(l, self.dim)]
        # the same pairs times a common denominator, for integer arithmetic
        self.pair_denominator = lcm(*(c.denominator for _, _, c in self.casimir_pairs))
        self.int_pairs = {
            "aff": [(a, b, int(c * self.pair_denominator)) for a, b, c in self.casimir_pairs],
            "heis": [(a, b, int(c * self.pair_denominator)) for a, b, c in self.cartan_pairs],
        }

    # -- basis ---------------------------------------------------------
    def is_cartan(self, g: int) -> bool:
        return g < self.rank

    def weight(self, g: int) -> Tuple[int, ...]:
        return self.weights[g]

    def opposite(self, g: int) -> int:
        return self.root_index[tuple(-x for x in self.weights[g])]

    def root_vector(self, sr) -> int:
        return self.root_index[tuple(int(x) for x in sr)]

    def t_of(self, sr) -> Dict[int, int]:
        """``t_beta`` in the Cartan basis, for ``beta`` given in simple-root coordinates."""
        return {i: int(c) for i, c in enumerate(sr) if c}

    def name(self, g: int) -> str:
        if g < self.rank:
            return f"h{g + 1}"
        return "x[" + ",".join(map(str, self.weights[g])) + "]"

    # -- cocycle and brackets -----------------------------------------
    def pair(self, a, b) -> int:
        return sum(a[i] * self.B[i][j] * b[j] for i in range(self.rank) for j in range(self.rank))

    def eps(self, a, b) -> int:
        l = self.rank
        e = sum(a[i] * b[i] for i in range(l))
        e += sum(a[i] * b[j] * self.B[i][j] for i in range(l) for j in range(i + 1, l))
        return -1 if e % 2 else 1

    def _scale(self, root) -> int:
        if any(x > 0 for x in root):
            return 1
        return self.eps(tuple(-x for x in root), root)

    def _bracket(self, a: int, b: int) -> Dict[int, int]:
        l = self.rank
        if a < l and b < l:
            return {}
        if a < l:
            c = sum(self.B[a][j] * x for j, x in enumerate(self.weights[b]))
            return {b: c} if c else {}
        if b < l:
            return {g: -c for g, c in self._bracket(b, a).items()}
        wa, wb = self.weights[a], self.weights[b]
        s = tuple(x + y for x, y in zip(wa, wb))
        if not any(s):
            return self.t_of(wa)
        g = self.root_index.get(s)
        if g is None:
            return {}
        c = self._scale(wa) * self._scale(wb) * self.eps(wa, wb) * self._scale(s)
        return {g: c}

    def bracket(self, a: int, b: int) -> Dict[int, int]:
        return self._brackets[a][b]

    def form(self, a: int, b: int) -> int:
        l = self.rank
        if a < l and b < l:
            return self.B[a][b]
        if a < l or b < l:
            return 0
        return 1 if not any(x + y for x, y in zip(self.weights[a], self.weights[b])) else 0


@lru_cache(maxsize=None)
def lie_data(spec: AlgebraSpec) -> LieData:
    return LieData(build_root_system(spec))
