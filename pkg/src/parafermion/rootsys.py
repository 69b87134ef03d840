"""Root systems of simple Lie algebras in exact arithmetic.

All weights live over Q in the simple-root basis.  The invariant form is
normalized so that long roots have squared length 2, which keeps every
coordinate rational (no square roots appear even for C_l or G_2).
Node numbering follows Kac's tables; node indices exposed to users are
1-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import lattice

FAMILIES = "ABCDEFG"


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class AlgebraSpec:
    family: str
    rank: int

    def __post_init__(self) -> None:
        fam, r = self.family, self.rank
        if fam not in FAMILIES or len(fam) != 1:
            raise RootSystemError(f"unknown family {fam!r}")
        if not isinstance(r, int) or r < 1:
            raise RootSystemError(f"rank must be a positive integer, got {r!r}")
        ok = {
            "A": r >= 1,
            "B": r >= 2,
            "C": r >= 2,
            "D": r >= 4,
            "E": r in (6, 7, 8),
            "F": r == 4,
            "G": r == 2,
        }[fam]
        if not ok:
            raise RootSystemError(f"{fam}_{r} is not a simple Lie algebra type")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "AlgebraSpec":
        text = text.strip().upper().replace("_", "")
        if len(text) < 2 or not text[1:].isdigit():
            raise RootSystemError(f"cannot parse algebra name {text!r}")
        return cls(text[0], int(text[1:]))


@dataclass(frozen=True)
class Weight:
    """A weight stored in both the simple-root and fundamental-weight bases.

    Equality and hashing use ``sr`` only; ``fw`` is determined by it.
    """

    sr: Tuple[Fraction, ...]
    fw: Tuple[Fraction, ...] = field(compare=False)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self.sr, other.sr)),
            tuple(a + b for a, b in zip(self.fw, other.fw)),
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a - b for a, b in zip(self.sr, other.sr)),
            tuple(a - b for a, b in zip(self.fw, other.fw)),
        )

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.sr), tuple(-a for a in self.fw))

    def __mul__(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(tuple(c * a for a in self.sr), tuple(c * a for a in self.fw))

    __rmul__ = __mul__

    @property
    def rank(self) -> int:
        return len(self.sr)

    def is_zero(self) -> bool:
        return not any(self.sr)

    def in_root_lattice(self) -> bool:
        return all(a.denominator == 1 for a in self.sr)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.fw)

    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self.fw)

    def fw_ints(self) -> Tuple[int, ...]:
        return tuple(int(a) for a in self.fw)

    def sr_ints(self) -> Tuple[int, ...]:
        return tuple(int(a) for a in self.sr)

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.fw) + ")"


def _gram_matrix(spec: AlgebraSpec) -> List[List[Fraction]]:
    fam, l = spec.family, spec.rank
    g = [[Fraction(0)] * l for _ in range(l)]

    def link(i, j, v):
        g[i - 1][j - 1] = g[j - 1][i - 1] = Fraction(v)

    if fam == "A":
        lengths = [2] * l
        for i in range(1, l):
            link(i, i + 1, -1)
    elif fam == "B":
        lengths = [2] * (l - 1) + [1]
        for i in range(1, l):
            link(i, i + 1, -1)
    elif fam == "C":
        lengths = [1] * (l - 1) + [2]
        for i in range(1, l - 1):
            link(i, i + 1, Fraction(-1, 2))
        link(l - 1, l, -1)
    elif fam == "D":
        lengths = [2] * l
        for i in range(1, l - 1):
            link(i, i + 1, -1)
        link(l - 2, l, -1)
    elif fam == "E":
        lengths = [2] * l
        chain = l - 1
        for i in range(1, chain):
            link(i, i + 1, -1)
        link({6: 3, 7: 3, 8: 5}[l], l, -1)
    elif fam == "F":
        lengths = [2, 2, 1, 1]
        link(1, 2, -1)
        link(2, 3, -1)
        link(3, 4, Fraction(-1, 2))
    else:  # G
        lengths = [2, Fraction(2, 3)]
        link(1, 2, -1)
    for i in range(l):
        g[i][i] = Fraction(lengths[i])
    return g


class RootSystem:
    """Immutable root data for one simple Lie algebra.

    Attributes follow the usual names: ``simple_roots``, ``positive_roots``
    (ordered by height), ``theta`` (highest root), ``rho``,
    ``fundamental_weights``, ``marks_a`` (coefficients of ``theta``),
    ``cartan_matrix`` with ``cartan_matrix[i][j] = <alpha_i^vee, alpha_j>``,
    ``form_matrix`` (Gram matrix of the simple roots), ``dual_coxeter``,
    ``dim_g`` and ``long_root_basis`` (a Hermite basis of the long-root
    lattice).
    """

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        l = self.rank = spec.rank
        self.form_matrix = _gram_matrix(spec)
        b = self.form_matrix
        cartan = [[2 * b[i][j] / b[i][i] for j in range(l)] for i in range(l)]
        if any(x.denominator != 1 for row in cartan for x in row):
            raise RootSystemError("non-integral Cartan matrix")
        self.cartan_matrix = [[int(x) for x in row] for row in cartan]
        self._cartan_inv = lattice.rational_inverse(self.cartan_matrix)
        self.simple_roots = [self.weight_from_sr([int(i == j) for j in range(l)]) for i in range(l)]
        self.fundamental_weights = [self.weight_from_fw([int(i == j) for j in range(l)]) for i in range(l)]

        self.positive_roots = self._close_roots()
        self.roots = self.positive_roots + [-a for a in self.positive_roots]
        self._root_set = frozenset(self.roots)
        self.theta = self.positive_roots[-1]
        if self.inner(self.theta, self.theta) != 2:
            raise RootSystemError("highest root is not long")
        self.marks_a = tuple(int(c) for c in self.theta.sr)
        half = Fraction(1, 2)
        rho = self.zero()
        for a in self.positive_roots:
            rho = rho + a
        self.rho = rho * half
        self.dim_g = l + len(self.roots)
        d = 1 + self.inner(self.rho, self.theta)
        if d.denominator != 1:
            raise RootSystemError("dual Coxeter number is not an integer")
        self.dual_coxeter = int(d)
        self.long_roots = [a for a in self.roots if self.inner(a, a) == 2]
        self._ql_hermite = lattice.hermite_basis([a.sr_ints() for a in self.long_roots], l)
        if len(self._ql_hermite) != l:
            raise RootSystemError("long roots do not span a full-rank lattice")
        self.long_root_basis = [self.weight_from_sr(row) for row in self._ql_hermite]
        self._fw_gram = [[self.inner(u, v) for v in self.fundamental_weights]
                         for u in self.fundamental_weights]

    # -- construction helpers ------------------------------------------
    def _close_roots(self) -> List[Weight]:
        l = self.rank
        a = self.cartan_matrix
        found = {tuple(int(i == j) for j in range(l)) for i in range(l)}
        layer = sorted(found, reverse=True)
        ordered = list(layer)
        while layer:
            nxt = set()
            for beta in layer:
                for i in range(l):
                    # alpha_i string through beta: p = steps down, pairing gives steps up
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in found:
                            p += 1
                        else:
                            break
                    pairing = sum(beta[j] * a[i][j] for j in range(l))
                    q = p - pairing
                    if q > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in found:
                            nxt.add(up)
            found |= nxt
            layer = sorted(nxt, reverse=True)
            ordered.extend(layer)
        return [self.weight_from_sr(r) for r in ordered]

    # -- weights ---------------------------------------------------------
    def zero(self) -> Weight:
        z = tuple(Fraction(0) for _ in range(self.rank))
        return Weight(z, z)

    def weight_from_sr(self, sr: Sequence) -> Weight:
        sr = tuple(Fraction(x) for x in sr)
        if len(sr) != self.rank:
            raise RootSystemError(f"expected {self.rank} coordinates, got {len(sr)}")
        a = self.cartan_matrix
        l = self.rank
        fw = tuple(sum((sr[i] * a[j][i] for i in range(l)), Fraction(0)) for j in range(l))
        return Weight(sr, fw)

    def weight_from_fw(self, fw: Sequence) -> Weight:
        fw = tuple(Fraction(x) for x in fw)
        if len(fw) != self.rank:
            raise RootSystemError(f"expected {self.rank} coordinates, got {len(fw)}")
        inv = self._cartan_inv
        l = self.rank
        sr = tuple(sum((inv[i][j] * fw[j] for j in range(l)), Fraction(0)) for i in range(l))
        return Weight(sr, fw)

    def _check(self, *ws: Weight) -> None:
        for w in ws:
            if w.rank != self.rank:
                raise RootSystemError(f"weight of rank {w.rank} used with {self.spec.name}")

    def inner(self, u: Weight, v: Weight) -> Fraction:
        self._check(u, v)
        b = self.form_matrix
        # <u, v> = sum_j u.sr_j <alpha_j, v>, and <alpha_j, v> = v.fw_j |alpha_j|^2 / 2
        return sum((u.sr[j] * v.fw[j] * b[j][j] / 2 for j in range(self.rank)), Fraction(0))

    def norm2(self, u: Weight) -> Fraction:
        return self.inner(u, u)

    def coroot_pairing(self, u: Weight, alpha: Weight) -> Fraction:
        return 2 * self.inner(u, alpha) / self.inner(alpha, alpha)

    def is_root(self, w: Weight) -> bool:
        return w in self._root_set

    def is_long(self, alpha: Weight) -> bool:
        return self.inner(alpha, alpha) == 2

    def reflect(self, w: Weight, i: int) -> Weight:
        """Simple reflection in ``alpha_i`` (1-based)."""
        return w - w.fw[i - 1] * self.simple_roots[i - 1]

    def dominant_conjugate(self, w: Weight) -> Weight:
        while True:
            i = next((j for j, c in enumerate(w.fw) if c < 0), None)
            if i is None:
                return w
            w = self.reflect(w, i + 1)

    def height(self, w: Weight) -> Fraction:
        return sum(w.sr, Fraction(0))

    def comarks(self) -> Tuple[Fraction, ...]:
        b = self.form_matrix
        return tuple(self.marks_a[i] * b[i][i] / 2 for i in range(self.rank))

    # -- lattices --------------------------------------------------------
    def in_long_root_lattice(self, w: Weight) -> bool:
        return w.in_root_lattice() and lattice.in_lattice(w.sr_ints(), self._ql_hermite)

    def scaled_long_root_hermite(self, k: int) -> lattice.IntMatrix:
        return [[k * x for x in row] for row in self._ql_hermite]

    def fw_gram(self) -> List[List[Fraction]]:
        """``<Lambda_i, Lambda_j>`` for the fundamental weights."""
        return [row[:] for row in self._fw_gram]

    def __repr__(self) -> str:
        return f"RootSystem({self.spec.name})"


@lru_cache(maxsize=None)
def build_root_system(spec: AlgebraSpec) -> RootSystem:
    return RootSystem(spec)


def root_system(family: str, rank: int) -> RootSystem:
    return build_root_system(AlgebraSpec(family, rank))


def inner_product(rs: RootSystem, u: Weight, v: Weight) -> Fraction:
    return rs.inner(u, v)


def dual_coxeter_number(rs: RootSystem) -> int:
    return rs.dual_coxeter


def k_alpha(rs: RootSystem, alpha: Weight, k: int) -> int:
    """Level of the sl_2 subalgebra attached to the root ``alpha``."""
    if not rs.is_root(alpha):
        raise RootSystemError(f"{alpha} is not a root of {rs.spec.name}")
    ratio = rs.inner(rs.theta, rs.theta) / rs.inner(alpha, alpha) * k
    assert ratio.denominator == 1
    return int(ratio)


def simple_current_nodes(rs: RootSystem) -> frozenset:
    """1-based nodes ``i`` whose mark ``a_i`` in the highest root equals 1."""
    return frozenset(i + 1 for i, a in enumerate(rs.marks_a) if a == 1)


def weight_lattice_index(rs: RootSystem) -> int:
    """``|P/Q|``, the determinant of the Cartan matrix."""
    return abs(int(lattice.determinant(rs.cartan_matrix)))


def q_mod_kql_representatives(rs: RootSystem, k: int) -> List[Weight]:
    """Coset representatives of ``Q / k Q_L`` via the Smith normal form.

    The representatives are returned in canonical reduced form (each is its
    own image under :func:`reduce_mod_kql`) and sorted.
    """
    if k < 1:
        raise RootSystemError("level must be positive")
    l = rs.rank
    # columns: k * (basis of Q_L) in the simple-root basis of Q
    cols = rs.scaled_long_root_hermite(k)
    m = [[cols[j][i] for j in range(l)] for i in range(l)]
    d, _u, u_inv, _v = lattice.smith_normal_form(m)
    diag = [d[i][i] for i in range(l)]
    reps = []
    for y in _box(diag):
        v = lattice.mat_vec(u_inv, y)
        reps.append(tuple(reduce_mod_kql_ints(rs, k, v)))
    reps = sorted(set(reps))
    assert len(reps) == _prod(diag)
    return [rs.weight_from_sr(r) for r in reps]


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _box(bounds: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    if not bounds:
        yield ()
        return
    for head in range(bounds[0]):
        for tail in _box(bounds[1:]):
            yield (head,) + tail


def reduce_mod_kql_ints(rs: RootSystem, k: int, v: Sequence[int]) -> List[int]:
    return lattice.reduce_mod_hermite(v, rs.scaled_long_root_hermite(k))


def reduce_mod_kql(rs: RootSystem, k: int, w: Weight) -> Weight:
    """Canonical representative of ``w + k Q_L``.

    The fractional part of the simple-root coordinates is kept as is (it
    only depends on the class of ``w`` mod ``Q``); the integral part is
    reduced into the Hermite box of ``k Q_L``.
    """
    frac = [x - (x.numerator // x.denominator) for x in w.sr]
    whole = [int(x - f) for x, f in zip(w.sr, frac)]
    red = reduce_mod_kql_ints(rs, k, whole)
    return rs.weight_from_sr([f + r for f, r in zip(frac, red)])


def coset_points(rs: RootSystem, k: int, w: Weight, max_norm2: Fraction) -> List[Weight]:
    """All ``w + k*beta`` (``beta`` in ``Q_L``) with squared length <= ``max_norm2``."""
    l = rs.rank
    basis = rs.long_root_basis
    gram = [[rs.inner(u, v) for v in basis] for u in basis]
    ginv = lattice.rational_inverse(gram)
    # z_j = <beta, b_j*> = (<x, b_j*> - <w, b_j*>) / k and |<x, b_j*>| <= |x| |b_j*|
    out = []
    ranges = []
    center = [sum(ginv[j][i] * rs.inner(w, basis[i]) for i in range(l)) / k for j in range(l)]
    for j in range(l):
        spread = _sqrt_up(Fraction(max_norm2) * ginv[j][j]) / k
        lo = _floor(-center[j] - spread) - 1
        hi = _ceil(-center[j] + spread) + 1
        ranges.append(range(lo, hi + 1))
    for z in _product(ranges):
        beta = rs.zero()
        for zj, b in zip(z, basis):
            if zj:
                beta = beta + zj * b
        x = w + k * beta
        if rs.norm2(x) <= max_norm2:
            out.append(x)
    return out


def minimal_coset_representative(rs: RootSystem, k: int, w: Weight) -> Weight:
    """Shortest element of ``w + k Q_L``; ties broken by simple-root coordinates."""
    pts = coset_points(rs, k, w, rs.norm2(w))
    return min(pts, key=lambda x: (rs.norm2(x), x.sr))


def _product(ranges) -> Iterator[Tuple[int, ...]]:
    if not ranges:
        yield ()
        return
    for head in ranges[0]:
        for tail in _product(ranges[1:]):
            yield (head,) + tail


def _sqrt_up(x: Fraction) -> Fraction:
    """A rational upper bound for sqrt(x), x >= 0."""
    x = Fraction(x)
    if x <= 0:
        return Fraction(0)
    scale = 10 ** 6
    n = x.numerator * scale * scale // x.denominator
    r = isqrt(n)
    if r * r < n:
        r += 1
    return Fraction(r, scale) + Fraction(1, scale)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def root_system_document(rs: RootSystem) -> Dict:
    """Canonical JSON-ready description of ``rs``."""
    from .qseries import fmt_q

    def sr(w: Weight):
        return [fmt_q(c) for c in w.sr]

    return {
        "algebra": rs.spec.name,
        "family": rs.spec.family,
        "rank": rs.rank,
        "dim_g": rs.dim_g,
        "dual_coxeter": rs.dual_coxeter,
        "cartan_matrix": rs.cartan_matrix,
        "form_matrix": [[fmt_q(x) for x in row] for row in rs.form_matrix],
        "simple_root_norms": [fmt_q(rs.norm2(a)) for a in rs.simple_roots],
        "positive_roots_sr": [sr(a) for a in rs.positive_roots],
        "theta_sr": sr(rs.theta),
        "rho_sr": sr(rs.rho),
        "marks_a": list(rs.marks_a),
        "fundamental_weights_sr": [sr(w) for w in rs.fundamental_weights],
        "simple_current_nodes": sorted(simple_current_nodes(rs)),
        "long_root_basis_sr": [sr(w) for w in rs.long_root_basis],
        "weight_lattice_index": weight_lattice_index(rs),
    }
