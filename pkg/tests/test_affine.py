from fractions import Fraction
from itertools import product

import pytest
from sympy import divisor_sigma, partition

from parafermion.affine import (
    CACHE_ENV,
    NotLevelKDominantError,
    affine_weight_multiplicities,
    central_charges,
    conformal_weight_n_Lambda,
    enumerate_level_k_dominants,
    finite_check,
    graded_dimension_series,
    is_level_k_dominant,
)
from parafermion.qseries import euler_power
from parafermion.rootsys import root_system


def lattice_theta(rs, D, bound=4):
    """``sum_{beta in Q} q^(|beta|^2 / 2)`` by enumerating a coefficient box."""
    g = rs.form_matrix
    l = rs.rank
    out = [0] * (D + 1)
    for c in product(range(-bound, bound + 1), repeat=l):
        n2 = sum(c[i] * g[i][j] * c[j] for i in range(l) for j in range(l))
        if n2 <= 2 * D:
            out[int(n2 / 2)] += 1
    return out


@pytest.mark.parametrize("fam,rank,D", [("A", 1, 10), ("A", 2, 6), ("A", 3, 4), ("D", 4, 4)])
def test_level_one_vacuum_is_lattice_theta_over_eta(fam, rank, D):
    rs = root_system(fam, rank)
    ld = central_charges(rs, 1)
    theta = lattice_theta(rs, D)
    inv = euler_power(-rank, D).coeffs
    want = [sum(theta[j] * inv[n - j] for j in range(n + 1)) for n in range(D + 1)]
    assert list(graded_dimension_series(ld, rs.zero(), D).coeffs) == want


def test_e8_level_one_against_e4_over_eta8():
    D = 2
    e4 = [1] + [240 * int(divisor_sigma(n, 3)) for n in range(1, D + 1)]
    inv = euler_power(-8, D).coeffs
    want = [sum(e4[j] * inv[n - j] for j in range(n + 1)) for n in range(D + 1)]
    rs = root_system("E", 8)
    assert list(graded_dimension_series(central_charges(rs, 1), rs.zero(), D).coeffs) == want == [1, 248, 4124]


@pytest.mark.parametrize("labels,shift", [((1, 0), 0), ((0, 1), 1)])
def test_sl2_level_one_weight_resolved(labels, shift):
    # L(1, Lambda) = sum_m q^((m + s/2)^2) / eta: weight s/2 + m carries p(n - m^2 - s m)
    rs = root_system("A", 1)
    ld = central_charges(rs, 1)
    Lambda = rs.weight_from_fw(labels[1:])
    D = 12
    table = affine_weight_multiplicities(ld, Lambda, D)
    for m in range(-4, 5):
        w = rs.weight_from_sr([Fraction(shift, 2) + m])
        for n in range(D + 1):
            e = n - m * m - shift * m
            assert table[w, n] == (int(partition(e)) if e >= 0 else 0)


@pytest.mark.parametrize("fam,rank,k,D", [("A", 2, 2, 4), ("B", 2, 1, 4), ("G", 2, 1, 3), ("C", 3, 1, 2), ("A", 1, 4, 6)])
def test_weyl_invariance_and_top_level(fam, rank, k, D):
    rs = root_system(fam, rank)
    ld = central_charges(rs, k)
    for Lambda in enumerate_level_k_dominants(rs, k):
        assert finite_check(ld, Lambda)
        table = affine_weight_multiplicities(ld, Lambda, D)
        for (w, n), m in table.entries.items():
            assert m > 0
            for i in range(rank):
                assert table[rs.reflect(w, i), n] == m
        # multiplicities grow with depth along the imaginary direction
        for w in table.weights():
            col = [table[w, n] for n in range(D + 1)]
            first = next(i for i, x in enumerate(col) if x)
            assert all(a <= b for a, b in zip(col[first:], col[first + 1:]))


def test_enumeration_and_level_check():
    rs = root_system("A", 2)
    got = [L.fw_ints() for L in enumerate_level_k_dominants(rs, 2)]
    assert got == sorted(got) and len(got) == 6
    g2 = root_system("G", 2)
    assert len(enumerate_level_k_dominants(g2, 1)) == 2
    assert not is_level_k_dominant(rs, 1, rs.weight_from_fw((1, 1)))
    with pytest.raises(NotLevelKDominantError):
        affine_weight_multiplicities(central_charges(rs, 1), rs.weight_from_fw((1, 1)), 2)


@pytest.mark.parametrize("k", range(1, 7))
def test_central_charges_sl2(k):
    ld = central_charges(root_system("A", 1), k)
    assert ld.c_aff == Fraction(3 * k, k + 2)
    assert ld.c_para == Fraction(2 * (k - 1), k + 2)
    assert ld.c_heis == 1


def test_conformal_weight_n_lambda():
    rs = root_system("A", 1)
    ld = central_charges(rs, 2)
    assert conformal_weight_n_Lambda(ld, rs.weight_from_fw((1,))) == Fraction(3, 16)
    assert conformal_weight_n_Lambda(ld, rs.weight_from_fw((2,))) == Fraction(1, 2)


def test_disk_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    rs = root_system("A", 2)
    ld = central_charges(rs, 1)
    first = affine_weight_multiplicities(ld, rs.weight_from_fw((1, 0)), 3)
    assert len(list(tmp_path.iterdir())) == 1
    second = affine_weight_multiplicities(ld, rs.weight_from_fw((1, 0)), 3)
    assert first.entries == second.entries
