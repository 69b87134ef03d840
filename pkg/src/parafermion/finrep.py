"""Weight multiplicities of finite-dimensional irreducible g-modules."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List

from .rootsys import AlgebraSpec, RootSystem, RootSystemError, Weight, build_root_system


class NotDominantIntegralError(RootSystemError):
    pass


@dataclass(frozen=True)
class WeightMultiplicityTable:
    highest_weight: Weight
    entries: Dict[Weight, int]

    @property
    def dimension(self) -> int:
        return sum(self.entries.values())

    def __getitem__(self, w: Weight) -> int:
        return self.entries.get(w, 0)

    def weights(self) -> List[Weight]:
        return sorted(self.entries, key=lambda w: (-sum(w.sr), w.sr))


def _require_dominant_integral(rs: RootSystem, lam: Weight) -> None:
    if lam.rank != rs.rank:
        raise RootSystemError(f"weight of rank {lam.rank} used with {rs.spec.name}")
    if not lam.is_integral() or not lam.is_dominant():
        raise NotDominantIntegralError(f"{lam} is not dominant integral")


def weyl_dimension(rs: RootSystem, Lambda: Weight) -> int:
    """Product over positive roots of <Lambda+rho, alpha> / <rho, alpha>."""
    _require_dominant_integral(rs, Lambda)
    num = Fraction(1)
    lr = Lambda + rs.rho
    for a in rs.positive_roots:
        num *= rs.inner(lr, a) / rs.inner(rs.rho, a)
    assert num.denominator == 1
    return int(num)


def is_weight_of(rs: RootSystem, Lambda: Weight, mu: Weight) -> bool:
    """Whether ``mu`` occurs in L(Lambda): its dominant conjugate lies below Lambda."""
    diff = Lambda - rs.dominant_conjugate(mu)
    return diff.in_root_lattice() and all(c >= 0 for c in diff.sr)


def weight_multiplicities(rs: RootSystem, Lambda: Weight) -> WeightMultiplicityTable:
    """Freudenthal's recursion, level by level in depth below ``Lambda``."""
    _require_dominant_integral(rs, Lambda)
    return _multiplicities(rs.spec, Lambda)


@lru_cache(maxsize=256)
def _multiplicities(spec: AlgebraSpec, Lambda: Weight) -> WeightMultiplicityTable:
    rs = build_root_system(spec)
    top = rs.norm2(Lambda + rs.rho)
    mult: Dict[Weight, int] = {Lambda: 1}
    layer = [Lambda]
    while layer:
        candidates = set()
        for w in layer:
            for a in rs.simple_roots:
                mu = w - a
                if mu not in mult and is_weight_of(rs, Lambda, mu):
                    candidates.add(mu)
        layer = sorted(candidates, key=lambda w: w.sr)
        for mu in layer:
            total = Fraction(0)
            for a in rs.positive_roots:
                nu = mu + a
                while nu in mult:
                    total += mult[nu] * rs.inner(nu, a)
                    nu = nu + a
            denom = top - rs.norm2(mu + rs.rho)
            m = 2 * total / denom
            assert m.denominator == 1 and m > 0, (mu, m)
            mult[mu] = int(m)
    return WeightMultiplicityTable(Lambda, mult)
