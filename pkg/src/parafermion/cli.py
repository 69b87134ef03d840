"""Command-line interface.

Exit codes: 0 success, 2 when some result is undetermined at the requested
depth, 1 on invalid input or an internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional

from .affine import (
    central_charges,
    conformal_weight_n_Lambda,
    enumerate_level_k_dominants,
    graded_dimension_series,
)
from .branching import branching_series
from .classify import atlas_csv, atlas_document, emit_atlas
from .qseries import fmt_q
from .rootsys import AlgebraSpec, build_root_system, q_mod_kql_representatives, root_system_document

EXIT_OK, EXIT_ERROR, EXIT_UNDETERMINED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: str
    rank: int
    level: Optional[int]
    depth: int
    fmt: str
    output: Optional[str]
    budget: int
    Lambda: Optional[List[int]] = None
    lambda_sr: Optional[List[int]] = None
    max_degree: int = 4
    sandbox_command: Optional[str] = None

    @property
    def spec(self) -> AlgebraSpec:
        return AlgebraSpec(self.family, self.rank)


def _int_list(values) -> List[int]:
    out = []
    for v in values or []:
        out.extend(int(x) for x in str(v).replace(",", " ").split())
    return out


def _common(p: argparse.ArgumentParser, level_required: bool, depth: bool = True) -> None:
    p.add_argument("family_pos", nargs="?", metavar="FAMILY")
    p.add_argument("rank_pos", nargs="?", type=int, metavar="RANK")
    p.add_argument("--family")
    p.add_argument("--rank", type=int)
    p.add_argument("--level", type=int, required=level_required)
    if depth:
        p.add_argument("--depth", type=int, default=6)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parafermion", description="Exact data for parafermion vertex algebras K(g, k).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _common(sub.add_parser("info", help="root system, level data and central charges"), False, depth=False)
    _common(sub.add_parser("atlas", help="irreducible module labels up to identification"), True)
    p = sub.add_parser("branch", help="branching series of one module label")
    _common(p, True)
    p.add_argument("--Lambda", nargs="+", required=True, help="Dynkin labels of Lambda")
    p.add_argument("--lambda-sr", nargs="+", help="simple-root coordinates of lambda - Lambda")
    p = sub.add_parser("sandbox", help="checks in the truncated PBW model")
    p.add_argument("sandbox_command", choices=["verify-generators", "quotient-dims", "generation"])
    _common(p, True, depth=False)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--budget", type=int, default=200_000)
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    family = ns.family or ns.family_pos
    rank = ns.rank if ns.rank is not None else ns.rank_pos
    if family is None or rank is None:
        raise UsageError("family and rank are required")
    level = ns.level
    if level is not None and level < 1:
        raise UsageError("--level must be at least 1")
    depth = getattr(ns, "depth", 0)
    if depth < 0:
        raise UsageError("--depth must be nonnegative")
    max_degree = getattr(ns, "max_degree", 4)
    if max_degree < 0:
        raise UsageError("--max-degree must be nonnegative")
    cfg = RunConfig(
        command=ns.command,
        family=family.upper(),
        rank=rank,
        level=level,
        depth=depth,
        fmt=ns.format,
        output=ns.output,
        budget=getattr(ns, "budget", 200_000),
        Lambda=_int_list(getattr(ns, "Lambda", None)) or None,
        lambda_sr=_int_list(getattr(ns, "lambda_sr", None)) or None,
        max_degree=max_degree,
        sandbox_command=getattr(ns, "sandbox_command", None),
    )
    cfg.spec  # validates family and rank
    return cfg


def cmd_info(cfg: RunConfig):
    rs = build_root_system(cfg.spec)
    doc = root_system_document(rs)
    if cfg.level is not None:
        ld = central_charges(rs, cfg.level)
        doc.update(
            {
                "level": cfg.level,
                "c_aff": fmt_q(ld.c_aff),
                "c_heis": fmt_q(ld.c_heis),
                "c_para": fmt_q(ld.c_para),
                "level_k_dominants": [
                    {"Lambda_labels": list(L.fw_ints()), "n_Lambda": fmt_q(conformal_weight_n_Lambda(ld, L))}
                    for L in enumerate_level_k_dominants(rs, cfg.level)
                ],
                "q_mod_kql_size": len(q_mod_kql_representatives(rs, cfg.level)),
            }
        )
    return doc, EXIT_OK


def cmd_atlas(cfg: RunConfig):
    rs = build_root_system(cfg.spec)
    ld = central_charges(rs, cfg.level)
    entries = emit_atlas(ld, cfg.depth)
    code = EXIT_OK if all(e.determined for e in entries) else EXIT_UNDETERMINED
    if cfg.fmt == "csv":
        return atlas_csv(ld, entries), code
    doc = atlas_document(ld, entries)
    doc["depth"] = cfg.depth
    return doc, code


def cmd_branch(cfg: RunConfig):
    rs = build_root_system(cfg.spec)
    ld = central_charges(rs, cfg.level)
    labels = cfg.Lambda or [0] * rs.rank
    if len(labels) != rs.rank:
        raise UsageError(f"--Lambda needs {rs.rank} Dynkin labels")
    shift = cfg.lambda_sr or [0] * rs.rank
    if len(shift) != rs.rank:
        raise UsageError(f"--lambda-sr needs {rs.rank} coordinates")
    Lambda = rs.weight_from_fw(labels)
    lam = Lambda + rs.weight_from_sr(shift)
    res = branching_series(ld, Lambda, lam, cfg.depth)
    doc = {
        "algebra": rs.spec.name,
        "level": cfg.level,
        "Lambda_labels": labels,
        "lambda_sr_coords": [fmt_q(x) for x in lam.sr],
        "depth": cfg.depth,
        "offset": fmt_q(res.series.offset),
        "coeffs": list(res.series.coeffs),
        "h_min": fmt_q(res.h_min) if res.determined else None,
        "status": "ok" if res.determined else "undetermined",
        "graded_dimension": graded_dimension_series(ld, Lambda, cfg.depth).to_json(),
    }
    if cfg.fmt == "csv":
        head = "algebra,level,Lambda_labels,lambda_sr_coords,offset,h_min,status,coeffs\n"
        row = ",".join(
            [
                doc["algebra"],
                str(doc["level"]),
                " ".join(map(str, labels)),
                " ".join(doc["lambda_sr_coords"]),
                doc["offset"],
                doc["h_min"] or "",
                doc["status"],
                " ".join(map(str, doc["coeffs"])),
            ]
        )
        return head + row + "\n", EXIT_OK if res.determined else EXIT_UNDETERMINED
    return doc, EXIT_OK if res.determined else EXIT_UNDETERMINED


def cmd_sandbox(cfg: RunConfig):
    from . import sandbox

    tm = sandbox.TruncatedModule(cfg.spec, cfg.level, cfg.max_degree, budget=cfg.budget)
    base = {"algebra": cfg.spec.name, "level": cfg.level, "max_degree": cfg.max_degree}
    if cfg.sandbox_command == "verify-generators":
        rep = sandbox.verify_generators(tm)
        return rep, EXIT_OK if rep["all_pass"] else EXIT_ERROR
    if cfg.sandbox_command == "quotient-dims":
        dims = sandbox.simple_quotient_graded_dims(tm)
        rows = [
            {"weight_sr": list(w), "degree": d, "dim": m}
            for (w, d), m in sorted(dims.items(), key=lambda x: (x[0][1], x[0][0]))
        ]
        totals = [sum(m for (_, d), m in dims.items() if d == n) for n in range(cfg.max_degree + 1)]
        base.update(
            {
                "universal_dims": sandbox.universal_graded_dims(tm),
                "quotient_dims": totals,
                "commutant_dims": sandbox.commutant_graded_dims(tm, in_quotient=True),
                "weights": rows,
            }
        )
        return base, EXIT_OK
    rep = sandbox.generation_check(tm)
    base.update(
        {
            "generated": rep["generated"],
            "commutant": rep["commutant"],
            "equal": rep["equal"],
            "deficit": {str(k): v for k, v in rep["deficit"].items()},
        }
    )
    return base, EXIT_OK if rep["equal"] else EXIT_ERROR


COMMANDS = {"info": cmd_info, "atlas": cmd_atlas, "branch": cmd_branch, "sandbox": cmd_sandbox}


def _render(doc, fmt: str) -> str:
    if isinstance(doc, str):
        return doc
    if fmt == "csv":
        return _flat_csv(doc)
    return json.dumps(doc, indent=2) + "\n"


def _flat_csv(doc) -> str:
    lines = ["key,value"]
    for k, v in doc.items():
        value = json.dumps(v, separators=(",", ":")) if not isinstance(v, str) else v
        lines.append(f"{k},\"{value.replace(chr(34), chr(34) * 2)}\"")
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        cfg = parse_config(argv)
        doc, code = COMMANDS[cfg.command](cfg)
        text = _render(doc, cfg.fmt)
    except UsageError as exc:
        stdout.write(json.dumps({"error": "usage", "message": str(exc)}) + "\n")
        return EXIT_ERROR
    except (ValueError, ArithmeticError, AssertionError, RuntimeError) as exc:
        stdout.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_ERROR
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
