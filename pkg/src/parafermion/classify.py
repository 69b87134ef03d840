"""Labels of irreducible parafermion modules and their identifications.

A label ``(Lambda, lambda)`` has ``Lambda`` in ``P_+^k`` and ``lambda`` in
``Lambda + Q`` taken modulo ``k Q_L``.  Two kinds of identification act on
labels: translation by ``k Q_L`` (built into the canonical form) and the
simple currents attached to the nodes with mark 1, which send
``(Lambda, lambda)`` to ``(Lambda', lambda + k Lambda_i)``.  The image
``Lambda'`` is found by minimizing the twisted conformal weight over
``L(k, Lambda)`` and checking the minimizing vectors against ``L_g(Lambda')``.
"""
from __future__ import annotations

import csv
import io
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .affine import (
    LevelData,
    affine_module,
    central_charges,
    conformal_weight_n_Lambda,
    enumerate_level_k_dominants,
)
from .branching import branching_series
from .finrep import weight_multiplicities
from .qseries import FormalQSeries, fmt_q
from .rootsys import (
    AlgebraSpec,
    RootSystemError,
    Weight,
    build_root_system,
    minimal_coset_representative,
    q_mod_kql_representatives,
    reduce_mod_kql,
    simple_current_nodes,
)

DEFAULT_DEPTH_CEILING = 64


class SimpleCurrentError(RuntimeError):
    """The image of a simple current could not be certified."""


class FingerprintMismatch(AssertionError):
    """Two labels in one orbit have different branching series."""


@dataclass(frozen=True, order=True)
class ModuleLabel:
    Lambda: Weight = field(compare=False)
    lambda_class: Weight = field(compare=False)
    key: Tuple = field(default=(), repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "key", (self.Lambda.fw, self.lambda_class.sr))

    def __str__(self) -> str:
        return f"[{self.Lambda}; {', '.join(map(str, self.lambda_class.sr))}]"


def make_label(ld: LevelData, Lambda: Weight, lam: Weight) -> ModuleLabel:
    if not (lam - Lambda).in_root_lattice():
        raise RootSystemError(f"{lam} is not in {Lambda} + Q")
    return ModuleLabel(Lambda, lattice_translation_normalize(ld.rs, ld.level, lam))


@dataclass(frozen=True)
class SimpleCurrentMap:
    node: int
    Lambda_image_table: Dict[Weight, Weight]
    shift: Weight


@dataclass(frozen=True)
class AtlasEntry:
    orbit: Tuple[ModuleLabel, ...]
    representative: ModuleLabel
    h_min: Optional[Fraction]
    c_para: Fraction
    series_prefix: FormalQSeries
    not_separated: bool = False

    @property
    def determined(self) -> bool:
        return self.h_min is not None


def lattice_translation_normalize(rs, k: int, lam: Weight) -> Weight:
    """Canonical representative of ``lam + k Q_L`` (idempotent)."""
    return reduce_mod_kql(rs, k, lam)


def enumerate_labels(ld: LevelData) -> List[ModuleLabel]:
    reps = q_mod_kql_representatives(ld.rs, ld.level)
    out = []
    for Lambda in enumerate_level_k_dominants(ld.rs, ld.level):
        for r in reps:
            out.append(make_label(ld, Lambda, Lambda + r))
    return out


def _require_current_node(rs, i: int) -> None:
    if i not in simple_current_nodes(rs):
        raise RootSystemError(f"node {i} of {rs.spec.name} does not have mark 1")


def twisted_conformal_shift(ld: LevelData, i: int, mu: Weight, n: int, Lambda: Weight) -> Fraction:
    """L(0) eigenvalue, in the module twisted by ``t_{Lambda_i}``, of a depth-``n`` vector of weight ``mu``."""
    rs = ld.rs
    _require_current_node(rs, i)
    li = rs.fundamental_weights[i - 1]
    return conformal_weight_n_Lambda(ld, Lambda) + n + rs.inner(mu, li) + ld.level * rs.norm2(li) / 2


def _certified_depth(c_prime: Fraction, r0: Fraction, k: int, li2: Fraction) -> int:
    """Smallest ``N`` with ``(n + c')^2 > (r0 + 2kn) li2`` and ``n + c' > 0`` for every ``n >= N``.

    Any weight ``mu`` at depth ``n`` has ``|mu|^2 <= r0 + 2kn``, so beyond ``N``
    the twisted weight exceeds the current minimum.
    """
    def ok(n):
        return n + c_prime > 0 and (n + c_prime) ** 2 > (r0 + 2 * k * n) * li2

    n = 0
    # the quadratic is increasing past its vertex k*li2 - c'
    vertex = k * li2 - c_prime
    while not (ok(n) and n >= vertex):
        n += 1
    while n > 0 and ok(n - 1) and n - 1 >= vertex:
        n -= 1
    return n


def simple_current_image(
    ld: LevelData, i: int, Lambda: Weight, D_init: int = 2, ceiling: int = DEFAULT_DEPTH_CEILING
) -> Weight:
    """``Lambda'`` with ``L(k, Lambda)`` twisted by ``t_{Lambda_i}`` isomorphic to ``L(k, Lambda')``."""
    return _image(ld.rs.spec, ld.level, i, Lambda, D_init, ceiling)


@lru_cache(maxsize=None)
def _image(spec: AlgebraSpec, k: int, i: int, Lambda: Weight, D_init: int, ceiling: int) -> Weight:
    rs = build_root_system(spec)
    ld = central_charges(rs, k)
    _require_current_node(rs, i)
    mod = affine_module(ld, Lambda)
    li = rs.fundamental_weights[i - 1]
    li2 = rs.norm2(li)
    n_lam = conformal_weight_n_Lambda(ld, Lambda)
    base = n_lam + k * li2 / 2
    # pairing with Lambda_i in Dynkin labels
    pair = [rs.inner(w, li) for w in rs.fundamental_weights]

    def shift(fw, n):
        return base + n + sum(a * b for a, b in zip(fw, pair))

    D = max(D_init, 0)
    best = None
    done = -1
    while True:
        for n in range(done + 1, D + 1):
            for fw in mod.depth_slice(n):
                s = shift(fw, n)
                if best is None or s < best:
                    best = s
        done = D
        need = _certified_depth(base - best, rs.norm2(Lambda), k, li2) - 1
        if need <= D:
            break
        if need > ceiling:
            raise SimpleCurrentError(
                f"depth {need} needed to certify the image of {Lambda} under node {i} exceeds ceiling {ceiling}"
            )
        D = need
    minimizers: Counter = Counter()
    for n in range(D + 1):
        for fw, m in mod.depth_slice(n).items():
            if shift(fw, n) == best:
                minimizers[rs.weight_from_fw(fw) + k * li] += m
    for cand in enumerate_level_k_dominants(rs, k):
        if conformal_weight_n_Lambda(ld, cand) != best:
            continue
        if dict(weight_multiplicities(rs, cand).entries) == dict(minimizers):
            return cand
    raise SimpleCurrentError(f"no level-{k} weight matches the twisted top level of {Lambda} (node {i})")


def simple_current_maps(ld: LevelData, **kw) -> List[SimpleCurrentMap]:
    rs, k = ld.rs, ld.level
    maps = []
    for i in sorted(simple_current_nodes(rs)):
        table = {L: simple_current_image(ld, i, L, **kw) for L in enumerate_level_k_dominants(rs, k)}
        if len(set(table.values())) != len(table):
            raise SimpleCurrentError(f"node {i} does not permute P_+^{k}")
        maps.append(SimpleCurrentMap(i, table, k * rs.fundamental_weights[i - 1]))
    return maps


def label_action(ld: LevelData, label: ModuleLabel, i: int) -> ModuleLabel:
    rs, k = ld.rs, ld.level
    image = simple_current_image(ld, i, label.Lambda)
    return make_label(ld, image, label.lambda_class + k * rs.fundamental_weights[i - 1])


def _apply_map(ld: LevelData, label: ModuleLabel, m: SimpleCurrentMap) -> ModuleLabel:
    return make_label(ld, m.Lambda_image_table[label.Lambda], label.lambda_class + m.shift)


def label_fingerprint(ld: LevelData, label: ModuleLabel, D: int):
    """Branching series of the label, using the shortest ``lambda`` in its class."""
    lam = minimal_coset_representative(ld.rs, ld.level, label.lambda_class)
    return branching_series(ld, label.Lambda, lam, D)


def compute_orbits(
    ld: LevelData, labels: Sequence[ModuleLabel], maps: Sequence[SimpleCurrentMap], D: int
) -> List[AtlasEntry]:
    """Partition ``labels`` into simple-current orbits and verify their fingerprints."""
    remaining = set(labels)
    entries = []
    for start in sorted(labels):
        if start not in remaining:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for m in maps:
                nxt = _apply_map(ld, cur, m)
                if nxt not in orbit:
                    orbit.add(nxt)
                    queue.append(nxt)
        missing = orbit - remaining
        if missing:
            raise FingerprintMismatch(f"orbit of {start} leaves the label set: {sorted(map(str, missing))}")
        remaining -= orbit
        members = tuple(sorted(orbit))
        rep = members[0]
        ref = label_fingerprint(ld, rep, D)
        best = ref
        for other in members[1:]:
            got = label_fingerprint(ld, other, D)
            # a determined h_min is exact; members may differ only in how far their data reach
            clash = got.determined and best.determined and got.h_min != best.h_min
            if clash or not got.series.same_as(ref.series):
                raise FingerprintMismatch(f"{other} and {rep} have different branching series")
            if (got.determined, got.series.max_exponent) > (best.determined, best.series.max_exponent):
                best = got
        entries.append(AtlasEntry(members, rep, best.h_min, ld.c_para, best.series))
    # flag orbits whose fingerprints coincide
    out = []
    for e in entries:
        twin = any(
            o is not e and o.determined and e.determined and o.h_min == e.h_min
            and o.series_prefix.same_as(e.series_prefix)
            for o in entries
        )
        out.append(AtlasEntry(e.orbit, e.representative, e.h_min, e.c_para, e.series_prefix, twin))
    return out


def _sort_key(e: AtlasEntry):
    return (e.h_min is None, e.h_min if e.h_min is not None else 0, e.representative)


def emit_atlas(ld: LevelData, D: int, ceiling: int = DEFAULT_DEPTH_CEILING) -> List[AtlasEntry]:
    maps = simple_current_maps(ld, ceiling=ceiling)
    entries = compute_orbits(ld, enumerate_labels(ld), maps, D)
    return sorted(entries, key=_sort_key)


def _label_doc(label: ModuleLabel) -> Dict:
    return {
        "Lambda_labels": [int(x) for x in label.Lambda.fw],
        "lambda_sr_coords": [fmt_q(x) for x in label.lambda_class.sr],
    }


def atlas_document(ld: LevelData, entries: Sequence[AtlasEntry]) -> Dict:
    rows = []
    for e in entries:
        row = _label_doc(e.representative)
        row.update(
            {
                "h_min": fmt_q(e.h_min) if e.h_min is not None else None,
                "status": "ok" if e.determined else "undetermined",
                "orbit_size": len(e.orbit),
                "orbit": [_label_doc(x) for x in e.orbit],
                "not_separated": e.not_separated,
                "series": e.series_prefix.to_json(),
            }
        )
        rows.append(row)
    return {
        "algebra": ld.rs.spec.name,
        "level": ld.level,
        "c_para": fmt_q(ld.c_para),
        "entries": rows,
    }


CSV_FIELDS = ["Lambda_labels", "lambda_sr_coords", "h_min", "status", "orbit_size", "not_separated", "offset", "coeffs"]


def atlas_csv(ld: LevelData, entries: Sequence[AtlasEntry]) -> str:
    doc = atlas_document(ld, entries)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["algebra", "level", "c_para"] + CSV_FIELDS)
    for row in doc["entries"]:
        w.writerow(
            [
                doc["algebra"],
                doc["level"],
                doc["c_para"],
                " ".join(map(str, row["Lambda_labels"])),
                " ".join(row["lambda_sr_coords"]),
                row["h_min"] or "",
                row["status"],
                row["orbit_size"],
                int(row["not_separated"]),
                row["series"]["offset"],
                " ".join(map(str, row["series"]["coeffs"])),
            ]
        )
    return buf.getvalue()
