"""Simple quotient, commutant and generator checks in the truncated model."""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..affine import central_charges
from ..lattice import SparseEchelon
from .pbw import VACUUM, TruncatedModule, Vec, add_into, degree, vec_degree
from .vectors import (
    build_omega_alpha,
    build_W3_alpha,
    omega_coset,
    singular_vector,
    verify_singular,
    vacuum,
)

WeightKey = Tuple[int, ...]


class MaximalSubmodule:
    """The submodule generated by the singular vector, degree by degree.

    ``J_{k+1}`` is the g-module generated by ``x_theta(-1)^(k+1) 1`` and
    ``J_d = sum_{m >= 1} sum_a a(-m) J_{d-m}``.  Each ``(weight, degree)``
    piece is kept as a fraction-free echelon.
    """

    def __init__(self, tm: TruncatedModule):
        self.tm = tm
        self._pieces: Dict[int, Dict[WeightKey, SparseEchelon]] = {}

    def _piece(self, d: int, wt: WeightKey) -> SparseEchelon:
        return self._pieces.setdefault(d, {}).setdefault(wt, SparseEchelon())

    def _insert(self, d: int, v: Vec) -> bool:
        if not v:
            return False
        wt = self.tm.weight(next(iter(v)))
        return self._piece(d, wt).insert(v)

    def degree_pieces(self, d: int) -> Dict[WeightKey, SparseEchelon]:
        tm = self.tm
        if d in self._pieces:
            return self._pieces[d]
        self._pieces[d] = {}
        start = tm.k + 1
        if d < start:
            return self._pieces[d]
        if d == start:
            queue = deque([singular_vector(tm)])
            self._insert(d, queue[0])
            while queue:
                v = queue.popleft()
                for g in range(tm.lie.rank, tm.lie.dim):
                    w = tm.act(g, 0, v)
                    if self._insert(d, w):
                        queue.append(w)
            return self._pieces[d]
        for m in range(1, d - start + 1):
            for piece in list(self.degree_pieces(d - m).values()):
                for v in piece.members:
                    for g in range(tm.lie.dim):
                        self._insert(d, tm.act(g, -m, v))
        return self._pieces[d]

    def rank(self, d: int, wt: WeightKey) -> int:
        piece = self.degree_pieces(d).get(wt)
        return len(piece) if piece else 0

    def members(self, d: int, wt: WeightKey) -> List[Vec]:
        piece = self.degree_pieces(d).get(wt)
        return list(piece.members) if piece else []


def _maximal(tm: TruncatedModule) -> MaximalSubmodule:
    if not hasattr(tm, "_maximal_submodule"):
        tm._maximal_submodule = MaximalSubmodule(tm)
    return tm._maximal_submodule


def universal_graded_dims(tm: TruncatedModule) -> List[int]:
    return [len(tm.basis(d)) for d in range(tm.D + 1)]


def simple_quotient_graded_dims(tm: TruncatedModule) -> Dict[Tuple[WeightKey, int], int]:
    """``dim L(k, 0)`` per (weight in simple-root coordinates, degree), zeros omitted."""
    J = _maximal(tm)
    out = {}
    for d in range(tm.D + 1):
        for wt, monos in tm.basis_by_weight(d).items():
            dim = len(monos) - J.rank(d, wt)
            if dim:
                out[(wt, d)] = dim
    return out


def _commutant_dim(tm: TruncatedModule, d: int, in_quotient: bool) -> int:
    zero = (0,) * tm.lie.rank
    space = tm.basis_by_weight(d).get(zero, [])
    J = _maximal(tm) if in_quotient else None
    ech = SparseEchelon()
    j_rows = 0
    slots = [(i, n) for i in range(tm.lie.rank) for n in range(1, d + 1)]
    if J is not None:
        for i, n in slots:
            for v in J.members(d - n, zero):
                if ech.insert({(i, n, m): c for m, c in v.items()}):
                    j_rows += 1
    total = j_rows
    for mono in space:
        image = {}
        for i, n in slots:
            for m, c in tm.act(i, n, {mono: 1}).items():
                image[(i, n, m)] = c
        total += ech.insert(image)
    # dimension of the preimage of J under v -> (h_i(n) v), minus J itself
    kernel = len(space) - (total - j_rows)
    return kernel - (J.rank(d, zero) if J is not None else 0)


def commutant_graded_dims(tm: TruncatedModule, in_quotient: bool = True) -> List[int]:
    """Graded dimensions of the Heisenberg commutant (in ``L(k, 0)`` when ``in_quotient``)."""
    return [_commutant_dim(tm, d, in_quotient) for d in range(tm.D + 1)]


def generator_set(tm: TruncatedModule) -> List[Tuple[str, Vec]]:
    out = []
    for i, a in enumerate(tm.rs.simple_roots, start=1):
        out.append((f"omega_{i}", build_omega_alpha(tm, a)))
        out.append((f"W3_{i}", build_W3_alpha(tm, a)))
    return out


def generation_check(tm: TruncatedModule, D: Optional[int] = None) -> Dict:
    """Compare the span of iterated generator modes on 1 with the commutant, degree by degree.

    Everything is computed modulo the maximal submodule.
    """
    D = tm.D if D is None else D
    if D > tm.D:
        raise ValueError("check depth exceeds the module truncation")
    zero = (0,) * tm.lie.rank
    J = _maximal(tm)
    gens = [(name, v, vec_degree(v)) for name, v in generator_set(tm)]
    span: Dict[int, SparseEchelon] = {}
    base: Dict[int, int] = {}
    for d in range(D + 1):
        e = SparseEchelon()
        for v in J.members(d, zero):
            e.insert(v)
        base[d] = len(e)
        span[d] = e
    queue = deque()
    if span[0].insert(vacuum()):
        queue.append((vacuum(), 0))
    while queue:
        w, dw = queue.popleft()
        for _, u, du in gens:
            for target in range(0, D + 1):
                n = du + dw - 1 - target
                x = tm.monomial_mode_action(u, n, w)
                if x and span[target].insert(x):
                    queue.append((x, target))
    generated = [len(span[d]) - base[d] for d in range(D + 1)]
    commutant = [_commutant_dim(tm, d, True) for d in range(D + 1)]
    return {
        "generated": generated,
        "commutant": commutant,
        "equal": generated == commutant,
        "deficit": {d: c - g for d, (g, c) in enumerate(zip(generated, commutant)) if g != c},
    }


def _vir_bracket_failures(tm: TruncatedModule, which: str, c: Fraction, max_vec_degree: int, modes) -> List[str]:
    # with L = Q / N the relation reads [Q(m), Q(n)] = N (m - n) Q(m + n) + N^2 c (m^3 - m) / 12
    N = tm.virasoro_denominator(which)
    fails = []
    for d in range(max_vec_degree + 1):
        for mono in tm.basis(d):
            v = {mono: 1}
            for m in modes:
                for n in modes:
                    if max(d - n, d - m, d - m - n) > tm.D or min(d - n, d - m) < 0:
                        continue
                    lhs = dict(tm.quadratic_int(which, m, tm.quadratic_int(which, n, v)))
                    add_into(lhs, tm.quadratic_int(which, n, tm.quadratic_int(which, m, v)), -1)
                    if d - m - n >= 0:
                        add_into(lhs, tm.quadratic_int(which, m + n, v), -N * (m - n))
                    if m + n == 0:
                        add_into(lhs, v, -c * N * N * (m ** 3 - m) / 12)
                    if lhs:
                        fails.append(f"[L({m}),L({n})] on {mono}")
    return fails


def virasoro_bracket_check(tm: TruncatedModule, which: str = "coset", max_vec_degree: int = 3, modes=range(-2, 3)):
    """Virasoro relations of ``L_aff``, ``L_h`` or ``L_aff - L_h`` on low-degree basis vectors."""
    ld = central_charges(tm.rs, tm.k)
    c = {"aff": ld.c_aff, "heis": ld.c_heis, "coset": ld.c_para}[which]
    return _vir_bracket_failures(tm, which, c, min(max_vec_degree, tm.D), modes)


def commuting_virasoro_check(tm: TruncatedModule, max_vec_degree: int = 2, modes=range(-2, 3)) -> List[str]:
    """``[L_h(m), (L_aff - L_h)(n)] = 0`` on low-degree basis vectors."""
    fails = []
    for d in range(min(max_vec_degree, tm.D) + 1):
        for mono in tm.basis(d):
            v = {mono: 1}
            for m in modes:
                for n in modes:
                    if max(d - n, d - m, d - m - n) > tm.D or min(d - n, d - m) < 0:
                        continue
                    x = dict(tm.quadratic_int("heis", m, tm.quadratic_int("coset", n, v)))
                    add_into(x, tm.quadratic_int("coset", n, tm.quadratic_int("heis", m, v)), -1)
                    if x:
                        fails.append(f"[L_h({m}),L({n})] on {mono}")
    return fails


def _in_commutant(tm: TruncatedModule, v: Vec) -> bool:
    d = vec_degree(v)
    return all(not tm.act(i, n, v) for i in range(tm.lie.rank) for n in range(0, d + 1))


def verify_generators(tm: TruncatedModule, vir_degree: Optional[int] = None) -> Dict:
    """Run every generator check; returns a report with per-check pass flags.

    The Virasoro relations are tested on basis vectors of degree at most
    ``vir_degree`` (default ``max_degree - 2``).
    """
    rs = tm.rs
    if vir_degree is None:
        vir_degree = max(tm.D - 2, 0)
    ld = central_charges(rs, tm.k)
    checks = []

    def record(name, ok, witness=None):
        item = {"check": name, "pass": bool(ok)}
        if not ok and witness is not None:
            item["witness"] = witness
        checks.append(item)

    sv = singular_vector(tm) if tm.k + 1 <= tm.D else None
    if sv is not None:
        record("singular_vector", verify_singular(tm, sv))
    for i, a in enumerate(rs.simple_roots, start=1):
        om = build_omega_alpha(tm, a)
        w3 = build_W3_alpha(tm, a)
        ka = tm.k * 2 // int(rs.norm2(a))
        for name, v, wt in ((f"omega_{i}", om, 2), (f"W3_{i}", w3, 3)):
            record(f"{name}:commutant", _in_commutant(tm, v))
            l0 = tm.coset_virasoro_mode(0, v)
            record(f"{name}:L0={wt}", l0 == {m: wt * c for m, c in v.items()})
        c_alpha = Fraction(2 * (ka - 1), ka + 2)
        if 4 <= tm.D + 2:
            got = tm.monomial_mode_action(om, 3, om)
            want = {VACUUM: c_alpha / 2} if c_alpha else {}
            record(f"omega_{i}:(omega)_3 omega=c/2", got == want, str(got))
    om_total = omega_coset(tm)
    record("omega:L0=2", tm.coset_virasoro_mode(0, om_total) == {m: 2 * c for m, c in om_total.items()})
    if tm.D >= 2:
        got = tm.coset_virasoro_mode(2, om_total)
        want = {VACUUM: ld.c_para / 2} if ld.c_para else {}
        record("omega:L2=c_para/2", got == want, str(got))
    fails = virasoro_bracket_check(tm, "coset", vir_degree)
    record(f"virasoro_bracket:c={ld.c_para}:deg<={min(vir_degree, tm.D)}", not fails, fails[:5])
    return {
        "algebra": rs.spec.name,
        "level": tm.k,
        "max_degree": tm.D,
        "checks": checks,
        "all_pass": all(c["pass"] for c in checks),
    }
