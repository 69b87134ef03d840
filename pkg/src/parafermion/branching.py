"""Branching functions of L(k, Lambda) over the Heisenberg subalgebra.

For a weight ``lambda`` in ``Lambda + Q`` the multiplicity space of the
Heisenberg module of highest weight ``lambda`` has graded dimension

    q^(n_Lambda - |lambda|^2 / 2k) * string_lambda(q) * prod_n (1 - q^n)^rank

where ``string_lambda`` lists the multiplicities of ``lambda - n delta``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .affine import (
    AffineMultiplicityTable,
    LevelData,
    affine_weight_multiplicities,
    conformal_weight_n_Lambda,
    graded_dimension_series,
)
from .qseries import FormalQSeries, euler_power
from .rootsys import (
    RootSystem,
    RootSystemError,
    Weight,
    coset_points,
    minimal_coset_representative,
    q_mod_kql_representatives,
)


class UndeterminedError(RuntimeError):
    """A series vanished on the whole computed range, so its leading term is unknown."""


class ReconstructionMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class BranchingResult:
    Lambda: Weight
    lam: Weight
    series: FormalQSeries
    h_min: Optional[Fraction]
    first_nonzero_depth: Optional[int]

    @property
    def label(self):
        return (self.Lambda, self.lam)

    @property
    def determined(self) -> bool:
        return self.first_nonzero_depth is not None


def _require_in_class(Lambda: Weight, lam: Weight) -> None:
    if not (lam - Lambda).in_root_lattice():
        raise RootSystemError(f"{lam} is not in {Lambda} + Q")


def string_series(table: AffineMultiplicityTable, lam: Weight, D: int) -> FormalQSeries:
    """``sum_n mult(lam - n delta) q^n`` for ``n <= D``; the offset is 0."""
    _require_in_class(table.Lambda, lam)
    if D > table.depth_cutoff:
        raise ValueError(f"table only reaches depth {table.depth_cutoff}")
    return FormalQSeries(Fraction(0), tuple(table[lam, n] for n in range(D + 1)))


def branching_series(ld: LevelData, Lambda: Weight, lam: Weight, D: int) -> BranchingResult:
    _require_in_class(Lambda, lam)
    table = affine_weight_multiplicities(ld, Lambda, D)
    s = string_series(table, lam, D) * euler_power(ld.rs.rank, D)
    if any(c < 0 for c in s.coeffs):
        raise ArithmeticError(f"negative branching coefficient for {Lambda}, {lam}")
    offset = conformal_weight_n_Lambda(ld, Lambda) - ld.rs.norm2(lam) / (2 * ld.level)
    series = s.shift(offset)
    first = series.first_nonzero()
    h_min = None if first is None else offset + first
    return BranchingResult(Lambda, lam, series, h_min, first)


def lowest_conformal_weight(ld: LevelData, Lambda: Weight, lam: Weight, D: int) -> Fraction:
    res = branching_series(ld, Lambda, lam, D)
    if not res.determined:
        raise UndeterminedError(f"branching series of ({Lambda}, {lam}) is zero up to depth {D}")
    return res.h_min


def heisenberg_character(ld: LevelData, lam: Weight, D: int) -> FormalQSeries:
    """Character of the rank-``l`` Heisenberg module with highest weight ``lam``."""
    return euler_power(-ld.rs.rank, D).shift(ld.rs.norm2(lam) / (2 * ld.level))


def lattice_theta_series(rs: RootSystem, k: int, shift: Weight, D: int) -> FormalQSeries:
    """``sum_{beta in Q_L} q^(|k beta + shift|^2 / 2k)``, ``D`` steps past the lowest exponent."""
    if k < 1:
        raise RootSystemError("level must be positive")
    base = minimal_coset_representative(rs, k, shift)
    n0 = rs.norm2(base)
    coeffs = [0] * (D + 1)
    for x in coset_points(rs, k, base, n0 + 2 * k * D):
        j = (rs.norm2(x) - n0) / (2 * k)
        assert j.denominator == 1
        coeffs[int(j)] += 1
    return FormalQSeries(n0 / (2 * k), tuple(coeffs))


def reconstruct_affine_character(ld: LevelData, Lambda: Weight, D: int) -> FormalQSeries:
    """Rebuild the graded dimension of L(k, Lambda) from its Heisenberg decomposition.

    Sums theta series times Heisenberg character times branching series over
    the cosets of ``Q / k Q_L`` and returns the result; the caller compares it
    with :func:`graded_dimension_series`.
    """
    rs, k = ld.rs, ld.level
    total = None
    euler_inv = euler_power(-rs.rank, D)
    for r in q_mod_kql_representatives(rs, k):
        lam = minimal_coset_representative(rs, k, Lambda + r)
        part = lattice_theta_series(rs, k, lam, D) * euler_inv * branching_series(ld, Lambda, lam, D).series
        total = part if total is None else total + part
    return total.truncate_at_exponent(conformal_weight_n_Lambda(ld, Lambda) + D)


def check_reconstruction(ld: LevelData, Lambda: Weight, D: int) -> FormalQSeries:
    """Raise :class:`ReconstructionMismatch` unless both sides agree to depth ``D``."""
    rebuilt = reconstruct_affine_character(ld, Lambda, D)
    direct = graded_dimension_series(ld, Lambda, D)
    if rebuilt.offset != direct.offset or rebuilt.coeffs != direct.coeffs:
        raise ReconstructionMismatch(f"{Lambda}: {rebuilt} != {direct}")
    return direct
