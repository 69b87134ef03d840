"""Level-k data of the affine algebra and weight multiplicities of L(k, Lambda).

Affine weights are written ``lambda + k Lambda_0 - n delta`` with the
finite part ``lambda`` in Dynkin labels and ``n`` the depth below the top
level.  Multiplicities come from the affine Freudenthal formula evaluated
on affine-dominant weights only; every other weight is first moved to its
dominant conjugate under the affine Weyl group.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from pathlib import Path
from typing import Dict, List, Tuple

from . import lattice
from .finrep import weight_multiplicities
from .qseries import FormalQSeries
from .rootsys import AlgebraSpec, RootSystem, RootSystemError, Weight, build_root_system

CACHE_ENV = "PARAFERMION_CACHE_DIR"


class NotLevelKDominantError(RootSystemError):
    pass


@dataclass(frozen=True)
class LevelData:
    rs: RootSystem
    level: int
    c_aff: Fraction
    c_heis: Fraction
    c_para: Fraction


def central_charges(rs: RootSystem, k: int) -> LevelData:
    if k < 1:
        raise RootSystemError("level must be a positive integer")
    c_aff = Fraction(k * rs.dim_g, k + rs.dual_coxeter)
    c_heis = Fraction(rs.rank)
    return LevelData(rs, k, c_aff, c_heis, c_aff - c_heis)


def theta_pairing(rs: RootSystem, Lambda: Weight) -> Fraction:
    return rs.inner(Lambda, rs.theta)


def enumerate_level_k_dominants(rs: RootSystem, k: int) -> List[Weight]:
    """Dominant integral weights with <Lambda, theta> <= k, sorted by Dynkin labels."""
    comarks = [int(c) for c in rs.comarks()]
    out = []

    def rec(prefix, budget):
        i = len(prefix)
        if i == rs.rank:
            out.append(tuple(prefix))
            return
        for v in range(budget // comarks[i] + 1):
            rec(prefix + [v], budget - v * comarks[i])

    rec([], k)
    return [rs.weight_from_fw(fw) for fw in sorted(out)]


def is_level_k_dominant(rs: RootSystem, k: int, Lambda: Weight) -> bool:
    return (
        Lambda.rank == rs.rank
        and Lambda.is_integral()
        and Lambda.is_dominant()
        and theta_pairing(rs, Lambda) <= k
    )


def _require_level_k(ld: LevelData, Lambda: Weight) -> None:
    if not is_level_k_dominant(ld.rs, ld.level, Lambda):
        raise NotLevelKDominantError(f"{Lambda} is not in P_+^{ld.level} for {ld.rs.spec.name}")


def conformal_weight_n_Lambda(ld: LevelData, Lambda: Weight) -> Fraction:
    """Lowest L(0) eigenvalue <Lambda, Lambda + 2 rho> / (2 (k + h^vee))."""
    _require_level_k(ld, Lambda)
    rs = ld.rs
    return rs.inner(Lambda, Lambda + 2 * rs.rho) / (2 * (ld.level + rs.dual_coxeter))


class AffineModule:
    """Multiplicity oracle for the integrable module L(k, Lambda).

    Results are memoized on affine-dominant weights and shared by every
    depth cutoff, so one instance serves all tables for the same
    ``(g, k, Lambda)``.
    """

    def __init__(self, rs: RootSystem, k: int, Lambda: Weight):
        self.rs, self.k, self.Lambda = rs, k, Lambda
        l = self.rank = rs.rank
        a = rs.cartan_matrix
        self._alpha_fw = [tuple(a[j][i] for j in range(l)) for i in range(l)]
        self._theta_fw = rs.theta.fw_ints()
        self._comarks = tuple(int(c) for c in rs.comarks())
        self._marks = rs.marks_a
        self._fw_gram = rs.fw_gram()
        # inverse Cartan matrix as integers over a common denominator
        inv = lattice.rational_inverse(a)
        self._inv_den = lcm(*(x.denominator for row in inv for x in row))
        self._inv_num = [[int(x * self._inv_den) for x in row] for row in inv]
        half_len = [rs.form_matrix[i][i] / 2 for i in range(l)]
        self._roots = []
        for alpha in rs.roots:
            pair = tuple(alpha.sr[i] * half_len[i] for i in range(l))
            self._roots.append((alpha.fw_ints(), alpha.sr_ints(), rs.norm2(alpha), pair, alpha in rs.positive_roots))
        self._Lfw = Lambda.fw_ints()
        self._rho_fw = rs.rho.fw_ints()
        self._top = self._norm2([x + r for x, r in zip(self._Lfw, self._rho_fw)])
        self._kh = k + rs.dual_coxeter
        self._memo: Dict[Tuple[Tuple[int, ...], int], int] = {}
        self._tables: Dict[int, Dict[Tuple[int, ...], int]] = {}

    def _norm2(self, fw) -> Fraction:
        g = self._fw_gram
        l = self.rank
        return sum((fw[i] * fw[j] * g[i][j] for i in range(l) for j in range(l) if fw[i] and fw[j]), Fraction(0))

    def _sr_diff(self, fw) -> Tuple[int, ...]:
        d = [x - y for x, y in zip(self._Lfw, fw)]
        den = self._inv_den
        out = []
        for row in self._inv_num:
            s = sum(c * x for c, x in zip(row, d) if x)
            if s % den:
                raise RootSystemError("weight not in Lambda + Q")
            out.append(s // den)
        return tuple(out)

    def _dominate(self, fw, c, n):
        fw, c = list(fw), list(c)
        l = self.rank
        while True:
            moved = False
            for i in range(l):
                m = fw[i]
                if m < 0:
                    col = self._alpha_fw[i]
                    for j in range(l):
                        fw[j] -= m * col[j]
                    c[i] += m
                    moved = True
            c0 = self.k - sum(self._comarks[i] * fw[i] for i in range(l))
            if c0 < 0:
                for j in range(l):
                    fw[j] += c0 * self._theta_fw[j]
                    c[j] -= c0 * self._marks[j]
                n += c0
                moved = True
            if not moved:
                return tuple(fw), tuple(c), n

    def multiplicity_fw(self, fw, n: int) -> int:
        return self._mult(tuple(fw), self._sr_diff(fw), n)

    def _mult(self, fw, c, n) -> int:
        if n < 0:
            return 0
        fw, c, n = self._dominate(fw, c, n)
        if n < 0 or any(ci + n * ai < 0 for ci, ai in zip(c, self._marks)):
            return 0
        key = (fw, n)
        got = self._memo.get(key)
        if got is None:
            got = self._freudenthal(fw, c, n)
            self._memo[key] = got
        return got

    def _freudenthal(self, fw, c, n) -> int:
        if n == 0 and fw == self._Lfw:
            return 1
        l = self.rank
        k = self.k
        denom = self._top - self._norm2([x + r for x, r in zip(fw, self._rho_fw)]) + 2 * self._kh * n
        total = Fraction(0)
        for afw, asr, anorm, pair, positive in self._roots:
            lam_a = sum((fw[i] * pair[i] for i in range(l) if fw[i]), Fraction(0))
            if positive:
                j = 1
                while True:
                    m = self._mult(
                        tuple(fw[t] + j * afw[t] for t in range(l)),
                        tuple(c[t] - j * asr[t] for t in range(l)),
                        n,
                    )
                    if not m:
                        break
                    total += (lam_a + j * anorm) * m
                    j += 1
            for step in range(1, n + 1):
                for j in range(1, n // step + 1):
                    m = self._mult(
                        tuple(fw[t] + j * afw[t] for t in range(l)),
                        tuple(c[t] - j * asr[t] for t in range(l)),
                        n - j * step,
                    )
                    if m:
                        total += (lam_a + j * anorm + k * step) * m
        for step in range(1, n + 1):
            for j in range(1, n // step + 1):
                m = self._mult(fw, c, n - j * step)
                if m:
                    total += l * k * step * m
        if denom <= 0:
            raise ArithmeticError(f"non-positive Freudenthal denominator at {fw}, depth {n}")
        value = 2 * total / denom
        if value.denominator != 1 or value < 0:
            raise ArithmeticError(f"non-integral multiplicity {value} at {fw}, depth {n}")
        return int(value)

    def depth_slice(self, n: int) -> Dict[Tuple[int, ...], int]:
        """All finite weights (Dynkin labels) at depth ``n`` with their multiplicities."""
        if n in self._tables:
            return self._tables[n]
        if n == 0:
            seeds = [self._Lfw]
        else:
            seeds = list(self.depth_slice(n - 1))
        found: Dict[Tuple[int, ...], int] = {}
        stack = []
        seen = set()
        for s in seeds:
            if s not in seen:
                seen.add(s)
                stack.append(s)
        while stack:
            fw = stack.pop()
            m = self.multiplicity_fw(fw, n)
            if not m:
                continue
            found[fw] = m
            for col in self._alpha_fw:
                for sign in (1, -1):
                    nb = tuple(x + sign * y for x, y in zip(fw, col))
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
        self._tables[n] = found
        return found


@lru_cache(maxsize=None)
def _affine_module(spec: AlgebraSpec, k: int, Lambda: Weight) -> AffineModule:
    return AffineModule(build_root_system(spec), k, Lambda)


def affine_module(ld: LevelData, Lambda: Weight) -> AffineModule:
    _require_level_k(ld, Lambda)
    return _affine_module(ld.rs.spec, ld.level, Lambda)


@dataclass(frozen=True)
class AffineMultiplicityTable:
    Lambda: Weight
    depth_cutoff: int
    entries: Dict[Tuple[Weight, int], int]

    def __getitem__(self, key: Tuple[Weight, int]) -> int:
        w, n = key
        if n > self.depth_cutoff:
            raise KeyError(f"depth {n} beyond cutoff {self.depth_cutoff}")
        return self.entries.get((w, n), 0)

    def depth_slice(self, n: int) -> Dict[Weight, int]:
        return {w: m for (w, d), m in self.entries.items() if d == n}

    def weights(self) -> List[Weight]:
        return sorted({w for w, _ in self.entries}, key=lambda w: w.sr)


def _cache_path(ld: LevelData, Lambda: Weight, D: int):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = f"{ld.rs.spec.family},{ld.rs.rank},{ld.level},{','.join(map(str, Lambda.fw_ints()))},{D}"
    digest = hashlib.sha256(key.encode()).hexdigest()
    return Path(root) / f"affmult-{digest}.json"


def affine_weight_multiplicities(ld: LevelData, Lambda: Weight, D: int) -> AffineMultiplicityTable:
    """Multiplicities of ``lambda - n delta`` in L(k, Lambda) for ``n <= D``."""
    if D < 0:
        raise ValueError("depth cutoff must be nonnegative")
    _require_level_k(ld, Lambda)
    rs = ld.rs
    path = _cache_path(ld, Lambda, D)
    if path is not None and path.exists():
        doc = json.loads(path.read_text())
        entries = {(rs.weight_from_fw(fw), n): m for fw, n, m in doc["entries"]}
        return AffineMultiplicityTable(Lambda, D, entries)
    mod = affine_module(ld, Lambda)
    entries = {}
    rows = []
    for n in range(D + 1):
        for fw, m in sorted(mod.depth_slice(n).items()):
            entries[(rs.weight_from_fw(fw), n)] = m
            rows.append([list(fw), n, m])
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({"entries": rows}))
    return AffineMultiplicityTable(Lambda, D, entries)


def finite_check(ld: LevelData, Lambda: Weight) -> bool:
    """Depth-0 slice agrees with the finite Freudenthal table."""
    table = affine_weight_multiplicities(ld, Lambda, 0)
    fin = weight_multiplicities(ld.rs, Lambda)
    return table.depth_slice(0) == dict(fin.entries)


def graded_dimension_series(ld: LevelData, Lambda: Weight, D: int) -> FormalQSeries:
    """``sum_n dim L(k, Lambda)_{n_Lambda + n} q^(n_Lambda + n)`` up to ``n = D``."""
    table = affine_weight_multiplicities(ld, Lambda, D)
    coeffs = [0] * (D + 1)
    for (_, n), m in table.entries.items():
        coeffs[n] += m
    return FormalQSeries(conformal_weight_n_Lambda(ld, Lambda), tuple(coeffs))
