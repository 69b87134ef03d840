"""Degree-truncated PBW model of the universal vacuum module V(k, 0).

A monomial is a sorted tuple of factors ``(n, g)`` standing for the mode
``g(-n)``, ``n >= 1``; the tuple order (``n`` ascending, then ``g``) is the
normal order, so mode ``-1`` factors come first.  The monomial
``((n1, g1), (n2, g2), ...)`` means ``g1(-n1) g2(-n2) ... 1``.  Vectors are
dicts from monomials to exact coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, lcm
from typing import Dict, Iterator, List, Tuple

from ..rootsys import AlgebraSpec, build_root_system
from .lie import LieData, lie_data

Monomial = Tuple[Tuple[int, int], ...]
Vec = Dict[Monomial, Fraction]

VACUUM: Monomial = ()
DEFAULT_BUDGET = 200_000


class TruncationError(ValueError):
    """A result would leave the range of degrees the module was built for."""


class BudgetError(ValueError):
    """The requested truncation is too large for the configured budget."""


def degree(mono: Monomial) -> int:
    return sum(n for n, _ in mono)


def vec_degree(v: Vec) -> int:
    degs = {degree(m) for m in v}
    if len(degs) > 1:
        raise ValueError("vector is not homogeneous")
    return degs.pop() if degs else 0


def add_into(acc: dict, v: dict, c=1) -> None:
    for m, x in v.items():
        y = acc.get(m, 0) + c * x
        if y:
            acc[m] = y
        else:
            acc.pop(m, None)


def scaled(v: dict, c) -> dict:
    return {m: c * x for m, x in v.items()} if c else {}


def pbw_dimension(dim_g: int, d: int) -> int:
    """Number of PBW monomials of degree ``d`` with ``dim_g`` colors per mode."""
    c = [1] + [0] * d
    for _ in range(dim_g):
        for n in range(1, d + 1):
            for j in range(n, d + 1):
                c[j] += c[j - n]
    return c[d]


class TruncatedModule:
    """``V(k, 0)`` up to degree ``max_degree`` for a simply-laced ``g``."""

    def __init__(self, spec: AlgebraSpec, k: int, max_degree: int, budget: int = DEFAULT_BUDGET):
        if k < 1:
            raise ValueError("level must be positive")
        if max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        self.spec = spec
        self.rs = build_root_system(spec)
        self.lie: LieData = lie_data(spec)
        self.k = k
        self.D = max_degree
        size = sum(pbw_dimension(self.lie.dim, d) for d in range(max_degree + 1))
        if size > budget:
            raise BudgetError(f"{size} PBW monomials up to degree {max_degree} exceed budget {budget}")
        self.budget = budget
        self._memo: Dict[Tuple[int, int, Monomial], Dict[Monomial, int]] = {}
        self._field_memo: Dict[Tuple[Monomial, int, Monomial], Dict[Monomial, int]] = {}
        self._quad_memo: Dict[Tuple[str, int, Monomial], Dict[Monomial, Fraction]] = {}
        self._basis: Dict[int, List[Monomial]] = {}
        self.h_dual = self.rs.dual_coxeter
        da, dh = self.virasoro_denominator("aff"), self.virasoro_denominator("heis")
        self._coset_den = lcm(da, dh)
        self._coset_weights = (self._coset_den // da, self._coset_den // dh)

    # -- basis ---------------------------------------------------------
    def basis(self, d: int) -> List[Monomial]:
        """All PBW monomials of degree ``d`` in normal order."""
        if d > self.D:
            raise TruncationError(f"degree {d} beyond {self.D}")
        if d not in self._basis:
            self._basis[d] = list(self._monomials(d, (1, 0)))
        return self._basis[d]

    def _monomials(self, d: int, least) -> Iterator[Monomial]:
        if d == 0:
            yield ()
            return
        n0, g0 = least
        for n in range(n0, d + 1):
            for g in range(g0 if n == n0 else 0, self.lie.dim):
                for rest in self._monomials(d - n, (n, g)):
                    yield ((n, g),) + rest

    def weight(self, mono: Monomial) -> Tuple[int, ...]:
        w = [0] * self.lie.rank
        for _, g in mono:
            for i, x in enumerate(self.lie.weights[g]):
                w[i] += x
        return tuple(w)

    def basis_by_weight(self, d: int) -> Dict[Tuple[int, ...], List[Monomial]]:
        out: Dict[Tuple[int, ...], List[Monomial]] = {}
        for m in self.basis(d):
            out.setdefault(self.weight(m), []).append(m)
        return out

    def _check(self, d: int) -> None:
        if d > self.D:
            raise TruncationError(f"result of degree {d} exceeds max degree {self.D}")

    # -- current modes -------------------------------------------------
    def _apply(self, g: int, m: int, mono: Monomial) -> Dict[Monomial, int]:
        key = (g, m, mono)
        got = self._memo.get(key)
        if got is not None:
            return got
        if not mono:
            out = {((-m, g),): 1} if m < 0 else {}
        elif m < 0 and (-m, g) <= mono[0]:
            out = {((-m, g),) + mono: 1}
        else:
            (n1, g1), rest = mono[0], mono[1:]
            out = {}
            for mono2, c in self._apply(g, m, rest).items():
                add_into(out, self._apply(g1, -n1, mono2), c)
            for g2, c in self.lie.bracket(g, g1).items():
                add_into(out, self._apply(g2, m - n1, rest), c)
            if m == n1:
                f = self.lie.form(g, g1)
                if f:
                    add_into(out, {rest: 1}, m * f * self.k)
        self._memo[key] = out
        return out

    def act(self, g: int, m: int, v: Vec) -> Vec:
        """``g(m) v`` without a degree check."""
        out: dict = {}
        for mono, c in v.items():
            add_into(out, self._apply(g, m, mono), c)
        return out

    def current_mode_action(self, g: int, n: int, v: Vec) -> Vec:
        if v:
            self._check(vec_degree(v) - n)
        return self.act(g, n, v)

    def cartan_mode_action(self, h: Dict[int, Fraction], n: int, v: Vec) -> Vec:
        """Mode ``n`` of a Cartan element given as ``{i: coefficient}`` in the ``h_i`` basis."""
        out: dict = {}
        for i, c in h.items():
            add_into(out, self.current_mode_action(i, n, v), c)
        return out

    # -- quadratic fields -----------------------------------------------
    def _quadratic_mono(self, which: str, n: int, mono: Monomial) -> Dict[Monomial, int]:
        key = (which, n, mono)
        got = self._quad_memo.get(key)
        if got is not None:
            return got
        d = degree(mono)
        src = {mono: 1}
        out: dict = {}
        for a, b, c in self.lie.int_pairs[which]:
            for j in range(n - d, 0):
                # creation mode on the left
                add_into(out, self.act(a, j, self.act(b, n - j, src)), c)
            for j in range(0, d + 1):
                add_into(out, self.act(b, n - j, self.act(a, j, src)), c)
        self._quad_memo[key] = out
        return out

    def quadratic_int(self, which: str, n: int, v: dict) -> dict:
        """Integer multiple ``Q(n) v`` of a Virasoro mode: ``L(n) = Q(n) / virasoro_denominator(which)``.

        ``which`` is ``"aff"``, ``"heis"`` or ``"coset"``; the normal-ordered
        sums ``sum_j :a(j) b(n-j):`` run over the Casimir pairs of ``g`` or of
        the Cartan subalgebra.
        """
        if which == "coset":
            ca, ch = self._coset_weights
            out = scaled(self.quadratic_int("aff", n, v), ca)
            add_into(out, self.quadratic_int("heis", n, v), -ch)
            return out
        out: dict = {}
        for mono, cv in v.items():
            self._check(degree(mono) - n)
            add_into(out, self._quadratic_mono(which, n, mono), cv)
        return out

    def virasoro_denominator(self, which: str) -> int:
        p = self.lie.pair_denominator
        if which == "aff":
            return 2 * (self.k + self.h_dual) * p
        if which == "heis":
            return 2 * self.k * p
        return self._coset_den

    def virasoro_mode(self, which: str, n: int, v: Vec) -> Vec:
        den = self.virasoro_denominator(which)
        return {m: Fraction(x, den) for m, x in self.quadratic_int(which, n, v).items()}

    def sugawara_mode(self, n: int, v: Vec) -> Vec:
        """``L_aff(n) v`` from the normal-ordered Casimir sum."""
        return self.virasoro_mode("aff", n, v)

    def heisenberg_virasoro_mode(self, n: int, v: Vec) -> Vec:
        """``L_h(n) v`` for the Cartan Virasoro field of central charge ``rank``."""
        return self.virasoro_mode("heis", n, v)

    def coset_virasoro_mode(self, n: int, v: Vec) -> Vec:
        """``(L_aff - L_h)(n) v``."""
        return self.virasoro_mode("coset", n, v)

    # -- general fields --------------------------------------------------
    def _field(self, u: Monomial, n: int, v: Monomial) -> Dict[Monomial, int]:
        """``u_n v`` for monomials, by the iterate formula on the leading factor of ``u``."""
        key = (u, n, v)
        got = self._field_memo.get(key)
        if got is not None:
            return got
        dv = degree(v)
        total = degree(u) + dv - n - 1
        if total < 0:
            out = {}
        elif not u:
            out = {v: 1} if n == -1 else {}
        else:
            (m, a), w = u[0], u[1:]
            dw = degree(w)
            out = {}
            for i in range(0, dw + dv - n):
                inner = self._field_vec(w, n + i, {v: 1})
                if inner:
                    add_into(out, self.act(a, -m - i, inner), comb(m + i - 1, i))
            sign = -1 if m % 2 else 1
            for i in range(0, dv + 1):
                av = self._apply(a, i, v)
                if av:
                    add_into(out, self._field_vec(w, n - m - i, av), -sign * comb(m + i - 1, i))
        self._field_memo[key] = out
        return out

    def _field_vec(self, u: Monomial, n: int, v: dict) -> dict:
        out: dict = {}
        for mono, c in v.items():
            add_into(out, self._field(u, n, mono), c)
        return out

    def monomial_mode_action(self, u: Vec, n: int, v: Vec) -> Vec:
        """``u_n v`` where ``Y(u, z) = sum_n u_n z^(-n-1)``."""
        out: dict = {}
        for um, cu in u.items():
            for vm, cv in v.items():
                self._check(degree(um) + degree(vm) - n - 1)
                add_into(out, self._field(um, n, vm), cu * cv)
        return out
