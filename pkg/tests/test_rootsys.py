from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix

from parafermion.rootsys import (
    AlgebraSpec,
    RootSystemError,
    coset_points,
    k_alpha,
    minimal_coset_representative,
    q_mod_kql_representatives,
    reduce_mod_kql,
    root_system,
    root_system_document,
    simple_current_nodes,
    weight_lattice_index,
)

# (dim g, dual Coxeter number, |P/Q|, nodes with mark 1) in Kac labeling
TABLE = {
    ("A", 1): (3, 2, 2, {1}),
    ("A", 2): (8, 3, 3, {1, 2}),
    ("A", 3): (15, 4, 4, {1, 2, 3}),
    ("B", 2): (10, 3, 2, {1}),
    ("B", 3): (21, 5, 2, {1}),
    ("C", 2): (10, 3, 2, {2}),
    ("C", 3): (21, 4, 2, {3}),
    ("D", 4): (28, 6, 4, {1, 3, 4}),
    ("G", 2): (14, 4, 1, set()),
    ("F", 4): (52, 9, 1, set()),
    ("E", 6): (78, 12, 3, {1, 5}),
}


@pytest.mark.parametrize("fam,rank", sorted(TABLE))
def test_normalization_and_tables(fam, rank):
    rs = root_system(fam, rank)
    dim, hv, index, nodes = TABLE[(fam, rank)]
    assert rs.norm2(rs.theta) == 2
    assert len(rs.roots) == dim - rank == rs.dim_g - rank
    assert rs.dual_coxeter == hv
    assert weight_lattice_index(rs) == index == abs(Matrix(rs.cartan_matrix).det())
    assert set(simple_current_nodes(rs)) == nodes
    assert len(nodes) == index - 1
    # h^vee = 1 + sum of comarks
    assert 1 + sum(rs.comarks()) == hv
    # the highest root is dominant, and theta = sum a_i alpha_i
    assert rs.theta.is_dominant()
    assert tuple(rs.theta.sr) == tuple(rs.marks_a)


@pytest.mark.parametrize("fam,rank", sorted(TABLE))
def test_weyl_vector_and_reflections(fam, rank):
    rs = root_system(fam, rank)
    assert rs.rho.fw_ints() == (1,) * rank
    assert 2 * rs.rho == sum(rs.positive_roots, rs.zero())
    roots = set(rs.roots)
    for i in range(rank):
        assert {rs.reflect(a, i) for a in roots} == roots


def test_weyl_group_orbit_sizes():
    # |W| / |Stab| by brute force orbit closure
    rs = root_system("B", 2)
    seen = {rs.rho}
    frontier = [rs.rho]
    while frontier:
        w = frontier.pop()
        for i in range(rs.rank):
            x = rs.reflect(w, i)
            if x not in seen:
                seen.add(x)
                frontier.append(x)
    assert len(seen) == 8


def test_invalid_specs():
    for fam, rank in [("X", 2), ("A", 0), ("B", 1), ("D", 3), ("G", 3), ("E", 9), ("F", 2)]:
        with pytest.raises(RootSystemError):
            AlgebraSpec(fam, rank)


def _q_mod_kql_size(rs, k):
    basis = Matrix([[int(x) for x in b.sr] for b in rs.long_root_basis])
    return abs((k * basis).det())


@pytest.mark.parametrize("name,k", [("A1", 1), ("A1", 3), ("A2", 2), ("B2", 2), ("C2", 1), ("G2", 1), ("D4", 1), ("B3", 2)])
def test_q_mod_kql_representatives(name, k):
    rs = root_system(name[0], int(name[1:]))
    reps = q_mod_kql_representatives(rs, k)
    assert len(reps) == _q_mod_kql_size(rs, k)
    assert len({reduce_mod_kql(rs, k, r) for r in reps}) == len(reps)
    assert all(reduce_mod_kql(rs, k, r) == r for r in reps)


def test_a2_level_two_has_four_classes():
    assert len(q_mod_kql_representatives(root_system("A", 2), 2)) == 4


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=2), st.lists(st.integers(-3, 3), min_size=2, max_size=2),
       st.integers(1, 3), st.sampled_from(["A2", "B2", "G2", "C2"]))
def test_reduce_mod_kql_invariant_under_translation(v, z, k, name):
    rs = root_system(name[0], 2)
    w = rs.weight_from_sr(v) + rs.fundamental_weights[0]
    shift = rs.zero()
    for c, b in zip(z, rs.long_root_basis):
        shift = shift + (k * c) * b
    assert reduce_mod_kql(rs, k, w) == reduce_mod_kql(rs, k, w + shift)
    r = reduce_mod_kql(rs, k, w)
    assert reduce_mod_kql(rs, k, r) == r


def test_coset_points_against_brute_force():
    rs = root_system("A", 2)
    k = 2
    w = rs.fundamental_weights[0]
    bound = Fraction(20)
    got = set(coset_points(rs, k, w, bound))
    brute = set()
    for a, b in product(range(-8, 9), repeat=2):
        x = w + rs.weight_from_sr([k * a, k * b])
        if rs.norm2(x) <= bound:
            brute.add(x)
    assert got == brute
    m = minimal_coset_representative(rs, k, w + rs.weight_from_sr([4, -2]))
    assert rs.norm2(m) == min(rs.norm2(x) for x in brute)


def test_k_alpha_short_roots():
    rs = root_system("B", 2)
    longs = {k_alpha(rs, a, 3) for a in rs.roots if rs.norm2(a) == 2}
    shorts = {k_alpha(rs, a, 3) for a in rs.roots if rs.norm2(a) == 1}
    assert longs == {3} and shorts == {6}
    g2 = root_system("G", 2)
    assert {k_alpha(g2, a, 1) for a in g2.roots} == {1, 3}


def test_document_is_plain_data():
    import json

    doc = root_system_document(root_system("C", 3))
    text = json.dumps(doc, sort_keys=True)
    assert json.loads(text)["simple_current_nodes"] == [3]
    assert doc["dual_coxeter"] == 4


@pytest.mark.parametrize("fam,rank", sorted(TABLE))
def test_basis_duality_and_form_symmetry(fam, rank):
    rs = root_system(fam, rank)
    for i, L in enumerate(rs.fundamental_weights):
        for j, a in enumerate(rs.simple_roots):
            assert rs.inner(L, 2 * a) / rs.norm2(a) == (1 if i == j else 0)
    ws = rs.fundamental_weights + rs.simple_roots
    for u in ws:
        for v in ws:
            assert rs.inner(u, v) == rs.inner(v, u)


def test_long_root_lattice_membership():
    for rank in (2, 3):
        b = root_system("B", rank)
        c = root_system("C", rank)
        assert all(b.in_long_root_lattice(a) for a in b.roots if b.norm2(a) == 2)
        assert not b.in_long_root_lattice(b.fundamental_weights[0])
        assert not c.in_long_root_lattice(c.fundamental_weights[rank - 1])
