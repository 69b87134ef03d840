"""Distinguished vectors of the vacuum module."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Sequence, Tuple, Union

from ..rootsys import Weight, k_alpha
from .pbw import VACUUM, TruncatedModule, Vec, add_into, scaled

# a factor is (generator index or {cartan index: coeff}, mode)
Factor = Tuple[Union[int, Dict[int, Fraction]], int]


def word(tm: TruncatedModule, factors: Sequence[Factor]) -> Vec:
    """``a1(m1) a2(m2) ... 1``, the rightmost factor applied first."""
    v: Vec = {VACUUM: Fraction(1)}
    for g, m in reversed(factors):
        if isinstance(g, dict):
            v = tm.cartan_mode_action(g, m, v)
        else:
            v = tm.current_mode_action(g, m, v)
    return v


def combine(*terms: Tuple[object, Vec]) -> Vec:
    out: dict = {}
    for c, v in terms:
        add_into(out, v, Fraction(c))
    return out


def vacuum() -> Vec:
    return {VACUUM: Fraction(1)}


def _sl2_data(tm: TruncatedModule, alpha: Weight):
    if alpha not in tm.rs.positive_roots:
        raise ValueError(f"{alpha} is not a positive root")
    lie = tm.lie
    xp = lie.root_vector(alpha.sr)
    xm = lie.opposite(xp)
    # simply laced: h_alpha = t_alpha
    h = {i: Fraction(c) for i, c in lie.t_of(alpha.sr).items()}
    return h, xp, xm, k_alpha(tm.rs, alpha, tm.k)


def omega_aff(tm: TruncatedModule) -> Vec:
    out: dict = {}
    for a, b, c in tm.lie.casimir_pairs:
        add_into(out, word(tm, [(a, -1), (b, -1)]), c)
    return scaled(out, Fraction(1, 2 * (tm.k + tm.h_dual)))


def omega_h(tm: TruncatedModule) -> Vec:
    out: dict = {}
    for a, b, c in tm.lie.cartan_pairs:
        add_into(out, word(tm, [(a, -1), (b, -1)]), c)
    return scaled(out, Fraction(1, 2 * tm.k))


def omega_coset(tm: TruncatedModule) -> Vec:
    return combine((1, omega_aff(tm)), (-1, omega_h(tm)))


def build_omega_alpha(tm: TruncatedModule, alpha: Weight) -> Vec:
    h, xp, xm, ka = _sl2_data(tm, alpha)
    body = combine(
        (-ka, word(tm, [(h, -2)])),
        (-1, word(tm, [(h, -1), (h, -1)])),
        (2 * ka, word(tm, [(xp, -1), (xm, -1)])),
    )
    return scaled(body, Fraction(1, 2 * ka * (ka + 2)))


def build_W3_alpha(tm: TruncatedModule, alpha: Weight) -> Vec:
    h, xp, xm, ka = _sl2_data(tm, alpha)
    return combine(
        (ka * ka, word(tm, [(h, -3)])),
        (3 * ka, word(tm, [(h, -2), (h, -1)])),
        (2, word(tm, [(h, -1), (h, -1), (h, -1)])),
        (-6 * ka, word(tm, [(h, -1), (xp, -1), (xm, -1)])),
        (3 * ka * ka, word(tm, [(xp, -2), (xm, -1)])),
        (-3 * ka * ka, word(tm, [(xp, -1), (xm, -2)])),
    )


def singular_vector(tm: TruncatedModule) -> Vec:
    """``x_theta(-1)^(k+1) 1``."""
    x = tm.lie.root_vector(tm.rs.theta.sr)
    return word(tm, [(x, -1)] * (tm.k + 1))


def verify_singular(tm: TruncatedModule, v: Vec) -> bool:
    """Annihilated by every positive mode and by the simple raising operators at mode 0."""
    d = max((sum(n for n, _ in m) for m in v), default=0)
    for g in range(tm.lie.dim):
        for n in range(1, d + 1):
            if tm.current_mode_action(g, n, v):
                return False
    for a in tm.rs.simple_roots:
        if tm.current_mode_action(tm.lie.root_vector(a.sr), 0, v):
            return False
    return True
