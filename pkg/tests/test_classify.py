from fractions import Fraction

import pytest

from parafermion.affine import central_charges, conformal_weight_n_Lambda, enumerate_level_k_dominants
from parafermion.branching import branching_series
from parafermion.classify import (
    CSV_FIELDS,
    SimpleCurrentError,
    atlas_csv,
    atlas_document,
    compute_orbits,
    emit_atlas,
    enumerate_labels,
    label_action,
    label_fingerprint,
    lattice_translation_normalize,
    make_label,
    simple_current_image,
    simple_current_maps,
    twisted_conformal_shift,
)
from parafermion.rootsys import RootSystemError, q_mod_kql_representatives, root_system


@pytest.mark.parametrize("k", range(1, 7))
def test_sl2_simple_current_rule(k):
    rs = root_system("A", 1)
    ld = central_charges(rs, k)
    for s in range(k + 1):
        got = simple_current_image(ld, 1, rs.weight_from_fw((s,)))
        assert got.fw_ints() == (k - s,)


def _extended(rs, k, L):
    return (k - sum(int(c) * x for c, x in zip(rs.comarks(), L.fw_ints())),) + L.fw_ints()


@pytest.mark.parametrize("fam,rank,k", [("A", 2, 1), ("A", 2, 2), ("A", 3, 1), ("D", 4, 1), ("B", 2, 2), ("C", 2, 2), ("C", 3, 1)])
def test_images_permute_extended_labels(fam, rank, k):
    rs = root_system(fam, rank)
    ld = central_charges(rs, k)
    maps = simple_current_maps(ld)
    for m in maps:
        # the vacuum goes to the simple current k Lambda_i itself
        assert m.Lambda_image_table[rs.zero()] == k * rs.fundamental_weights[m.node - 1]
        # one fixed permutation of extended Dynkin labels for all Lambda
        perms = None
        for L, image in m.Lambda_image_table.items():
            src, dst = _extended(rs, k, L), _extended(rs, k, image)
            assert sorted(src) == sorted(dst)
            ok = {p for p in _all_perms(len(src)) if tuple(src[p[j]] for j in range(len(src))) == dst}
            perms = ok if perms is None else perms & ok
        assert perms
        # conformal weights shift by an integer or an allowed fraction only through the top level
        for L, image in m.Lambda_image_table.items():
            assert conformal_weight_n_Lambda(ld, image) >= 0


def _all_perms(n):
    from itertools import permutations

    return list(permutations(range(n)))


def test_a_type_rotation():
    rs = root_system("A", 3)
    ld = central_charges(rs, 2)
    L = rs.weight_from_fw((1, 0, 1))
    ext = _extended(rs, 2, L)
    got = _extended(rs, 2, simple_current_image(ld, 1, L))
    rotations = {ext[-r:] + ext[:-r] for r in range(4)}
    assert got in rotations and got != ext


def test_non_current_nodes_rejected():
    rs = root_system("G", 2)
    ld = central_charges(rs, 1)
    assert simple_current_maps(ld) == []
    with pytest.raises(RootSystemError):
        simple_current_image(ld, 1, rs.zero())
    b2 = root_system("B", 2)
    with pytest.raises(RootSystemError):
        twisted_conformal_shift(central_charges(b2, 1), 2, b2.zero(), 0, b2.zero())


def test_ceiling_is_enforced():
    rs = root_system("A", 2)
    ld = central_charges(rs, 3)
    with pytest.raises(SimpleCurrentError):
        simple_current_image(ld, 1, rs.weight_from_fw((3, 0)), D_init=0, ceiling=0)


def test_twisted_shift_vacuum_top():
    rs = root_system("A", 1)
    ld = central_charges(rs, 2)
    # x_{-alpha}(-1)1 and the vacuum both land on h = 1/2 = n_{2 Lambda_1}
    vals = [twisted_conformal_shift(ld, 1, rs.weight_from_sr([m]), n, rs.zero()) for m, n in ((0, 0), (-1, 1), (1, 1), (-2, 2))]
    assert vals == [Fraction(1, 2), Fraction(1, 2), Fraction(5, 2), Fraction(1, 2)]
    assert conformal_weight_n_Lambda(ld, rs.weight_from_fw((2,))) == Fraction(1, 2)


def test_labels_and_normalization():
    rs = root_system("A", 2)
    ld = central_charges(rs, 2)
    labels = enumerate_labels(ld)
    assert len(labels) == 6 * len(q_mod_kql_representatives(rs, 2)) == 24
    assert len(set(labels)) == 24
    w = rs.weight_from_sr([Fraction(1, 3), Fraction(2, 3)])
    moved = w + rs.weight_from_sr([4, -2])
    assert lattice_translation_normalize(rs, 2, moved) == lattice_translation_normalize(rs, 2, w)
    assert len(enumerate_labels(central_charges(rs, 1))) == 3


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_sl2_orbits_share_series(k):
    rs = root_system("A", 1)
    ld = central_charges(rs, k)
    entries = emit_atlas(ld, 8)
    assert len(entries) == k * (k + 1) // 2
    assert all(e.determined for e in entries)
    for e in entries:
        ref = branching_series(ld, e.representative.Lambda, e.representative.lambda_class, 8)
        for member in e.orbit:
            got = label_fingerprint(ld, member, 8)
            assert got.h_min == e.h_min
            assert got.series.same_as(e.series_prefix)
            assert got.series.same_as(ref.series)


def test_label_action_is_an_order_k_permutation():
    rs = root_system("A", 2)
    ld = central_charges(rs, 2)
    for label in enumerate_labels(ld):
        x = label
        for _ in range(3):
            x = label_action(ld, x, 1)
        assert x == label


def test_atlas_a2_level_two():
    rs = root_system("A", 2)
    ld = central_charges(rs, 2)
    entries = emit_atlas(ld, 4)
    assert len(entries) == 8
    assert sum(len(e.orbit) for e in entries) == 24
    hs = sorted(e.h_min for e in entries)
    assert hs == sorted([0, Fraction(1, 10), Fraction(1, 10), Fraction(1, 10), Fraction(1, 2), Fraction(1, 2),
                         Fraction(1, 2), Fraction(3, 5)])
    assert sum(e.not_separated for e in entries) == 6


def test_orbit_closure_violation_detected():
    from parafermion.classify import FingerprintMismatch

    rs = root_system("A", 1)
    ld = central_charges(rs, 2)
    labels = enumerate_labels(ld)[:2]
    with pytest.raises(FingerprintMismatch):
        compute_orbits(ld, labels, simple_current_maps(ld), 4)


def test_documents():
    rs = root_system("A", 1)
    ld = central_charges(rs, 2)
    entries = emit_atlas(ld, 6)
    doc = atlas_document(ld, entries)
    assert [e["h_min"] for e in doc["entries"]] == ["0/1", "1/16", "1/2"]
    lines = atlas_csv(ld, entries).splitlines()
    assert lines[0].split(",") == ["algebra", "level", "c_para"] + CSV_FIELDS
    assert len(lines) == 4
    assert make_label(ld, rs.zero(), rs.simple_roots[0] * 3) == make_label(ld, rs.zero(), rs.simple_roots[0])


def test_short_depth_takes_h_min_from_any_member():
    # at depth 0 the fermion is visible only through the (2 Lambda_1, 0) member
    rs = root_system("A", 1)
    ld = central_charges(rs, 2)
    entries = emit_atlas(ld, 0)
    assert [e.h_min for e in entries] == [0, Fraction(1, 16), Fraction(1, 2)]
    assert all(e.series_prefix.first_nonzero() == 0 for e in entries)
