from functools import lru_cache

import pytest

from parafermion.finrep import NotDominantIntegralError, is_weight_of, weight_multiplicities, weyl_dimension
from parafermion.rootsys import root_system


def kostant_multiplicities(rs, Lambda):
    """Weight multiplicities from the Kostant multiplicity formula."""
    pos = [a.sr_ints() for a in rs.positive_roots]

    @lru_cache(maxsize=None)
    def partitions(gamma, start):
        if not any(gamma):
            return 1
        if any(x < 0 for x in gamma) or start == len(pos):
            return 0
        total = 0
        g = gamma
        while all(x >= 0 for x in g):
            total += partitions(g, start + 1)
            g = tuple(x - y for x, y in zip(g, pos[start]))
        return total

    # W-orbit of Lambda + rho with signs, by breadth-first reflection
    top = Lambda + rs.rho
    signed = {top: 1}
    frontier = [top]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(rs.rank):
                x = rs.reflect(w, i)
                if x not in signed:
                    signed[x] = -signed[w]
                    nxt.append(x)
        frontier = nxt

    def mult(mu):
        total = 0
        for w, s in signed.items():
            gamma = w - (mu + rs.rho)
            if gamma.in_root_lattice():
                total += s * partitions(gamma.sr_ints(), 0)
        return total

    return mult


CASES = [
    ("A", 2, (1, 1)), ("A", 2, (2, 1)), ("A", 3, (1, 0, 1)), ("B", 2, (1, 1)), ("B", 2, (0, 2)),
    ("C", 2, (1, 1)), ("G", 2, (1, 0)), ("G", 2, (0, 1)), ("B", 3, (0, 1, 0)),
]


@pytest.mark.parametrize("fam,rank,labels", CASES)
def test_freudenthal_matches_kostant(fam, rank, labels):
    rs = root_system(fam, rank)
    Lambda = rs.weight_from_fw(labels)
    table = weight_multiplicities(rs, Lambda)
    oracle = kostant_multiplicities(rs, Lambda)
    for w, m in table.entries.items():
        assert m == oracle(w), w
    assert table.dimension == weyl_dimension(rs, Lambda)


@pytest.mark.parametrize("fam,rank,labels,dim", [
    ("A", 1, (4,), 5), ("A", 2, (1, 1), 8), ("B", 2, (1, 0), 5), ("B", 2, (0, 1), 4), ("G", 2, (0, 1), 7), ("G", 2, (1, 0), 14),
    ("F", 4, (0, 0, 0, 1), 26), ("E", 6, (1, 0, 0, 0, 0, 0), 27), ("D", 4, (0, 1, 0, 0), 28), ("C", 3, (1, 0, 0), 6),
])
def test_known_dimensions(fam, rank, labels, dim):
    rs = root_system(fam, rank)
    Lambda = rs.weight_from_fw(labels)
    assert weyl_dimension(rs, Lambda) == dim
    assert weight_multiplicities(rs, Lambda).dimension == dim


def test_weyl_invariance_and_membership():
    rs = root_system("B", 2)
    Lambda = rs.weight_from_fw((2, 1))
    table = weight_multiplicities(rs, Lambda)
    for w, m in table.entries.items():
        assert is_weight_of(rs, Lambda, w)
        for i in range(rs.rank):
            assert table[rs.reflect(w, i)] == m
    assert not is_weight_of(rs, Lambda, Lambda + rs.simple_roots[0])


def test_adjoint_zero_weight_is_rank():
    for fam, rank in [("A", 2), ("B", 3), ("G", 2), ("D", 4)]:
        rs = root_system(fam, rank)
        assert weight_multiplicities(rs, rs.theta)[rs.zero()] == rank


def test_rejects_non_dominant():
    rs = root_system("A", 2)
    with pytest.raises(NotDominantIntegralError):
        weight_multiplicities(rs, rs.weight_from_fw((-1, 1)))
    with pytest.raises(NotDominantIntegralError):
        weyl_dimension(rs, rs.simple_roots[0])
