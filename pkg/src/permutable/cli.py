"""Command-line front end.

    permutable analyze <file> [--sc] [--json] [--timing] [caps]
    permutable profinite (<file> | --family NAME [--p P] [--q Q]) [--depth D] [--json]
    permutable catalog [--sc] [--json]

Exit codes: 0 the analysis ran (the verdict lives in the report), 2 input
error, 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional

import numpy as np

from . import catalog
from .config import Caps, default_caps
from .descriptions import digest, load_group_file, load_system_file, parse_system
from .errors import (
    BadParams,
    InvalidAction,
    NoChainFound,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotBijectiveRows,
    OrderCapExceeded,
    ParseError,
    PermutableError,
    SubgroupLimitExceeded,
)
from .complements import is_c_group, is_sc_group
from .groups import FiniteGroup, derived_mask, exponent, is_abelian
from .profinite import is_profinite_c_truncated, lift_complement_chain, theorem_c_report, \
    verify_chain
from .report import AnalysisReport, subgroup_json
from .structure import CernikovaDecomposition, cernikova_decompose, minimal_normal_subgroups, \
    rebuild_decomposition
from .subgroups import Subgroup, subgroup_as_group

_INPUT_ERRORS = (ParseError, BadParams, InvalidAction, NotAssociative, NoIdentity,
                 NoInverse, NotBijectiveRows, ValueError, OSError)
_CAP_ERRORS = (OrderCapExceeded, SubgroupLimitExceeded)

_STAGE_ORDER = ("derived_nonabelian", "split_a", "complement_b", "split_b")
_STAGE_LABELS = {
    "derived_nonabelian": "derived subgroup abelian",
    "split_a": "derived subgroup splits into normal prime lines",
    "complement_b": "derived subgroup has a permutable complement",
    "split_b": "complement splits into prime lines",
}


def _caps_from_args(args) -> Caps:
    return default_caps().with_overrides(
        max_order=getattr(args, "max_order", None),
        max_subgroups=getattr(args, "max_subgroups", None),
    )


def _caps_dict(caps: Caps) -> dict:
    return {
        "max_order": caps.max_order,
        "max_lattice_order": caps.max_lattice_order,
        "max_subgroups": caps.max_subgroups,
        "sc_max_order": caps.sc_max_order,
        "max_system_order": caps.max_system_order,
    }


def _decomposition_payload(result) -> tuple[Optional[dict], list[dict]]:
    stages = []
    if isinstance(result, CernikovaDecomposition):
        for name in _STAGE_ORDER:
            stages.append({"stage": name, "ok": True, "detail": _STAGE_LABELS[name]})
        dec = {
            "a": [[int(e), int(p)] for e, p in result.a_generators],
            "b": [[int(e), int(p)] for e, p in result.b_generators],
        }
        return dec, stages
    for name in _STAGE_ORDER:
        if name == result.stage:
            stages.append({"stage": name, "ok": False, "detail": result.detail})
            break
        stages.append({"stage": name, "ok": True, "detail": _STAGE_LABELS[name]})
    return None, stages


def _analyze_group(grp: FiniteGroup, caps: Caps, with_sc: bool) -> dict:
    verdict = is_c_group(grp, caps)
    dec, stages = _decomposition_payload(cernikova_decompose(grp, caps))
    payload = {
        "group": {"order": grp.order, "name": grp.name or None},
        "c_group": verdict.c_group,
        "witness": subgroup_json(verdict.witness),
        "decomposition": dec,
        "stages": stages,
        "sc_group": is_sc_group(grp, caps) if with_sc else None,
    }
    return payload


def cmd_analyze(args) -> AnalysisReport:
    caps = _caps_from_args(args)
    grp, raw = load_group_file(args.file, caps)
    payload = _analyze_group(grp, caps, args.sc)
    return AnalysisReport("analyze", digest(raw), _caps_dict(caps), payload)


def cmd_profinite(args) -> AnalysisReport:
    caps = _caps_from_args(args)
    if args.file:
        system, validation, sub, raw = load_system_file(args.file, caps)
    else:
        if not args.family:
            raise ParseError("profinite", "give a system file or --family")
        raw = {"family": args.family, "depth": args.depth}
        if args.p is not None:
            raw["p"] = args.p
        if args.q is not None:
            raw["q"] = args.q
        system, validation, sub = parse_system(raw, caps)
    payload = {
        "system": None,
        "validation": validation,
        "levelwise_c": None,
        "theorem_c": None,
        "chain": None,
    }
    if system is not None:
        payload["system"] = {
            "depth": system.depth,
            "orders": [g.order for g in system.levels],
            "family": raw.get("family"),
        }
        verdict = is_profinite_c_truncated(system, caps)
        payload["levelwise_c"] = {
            "all_c": verdict.all_c,
            "witness_level": verdict.witness_level,
            "witness": subgroup_json(verdict.witness),
            "details": list(verdict.details),
        }
        payload["theorem_c"] = theorem_c_report(system)
        if sub is not None:
            try:
                chain = lift_complement_chain(system, sub, caps)
                ok, _ = verify_chain(system, sub, chain)
                payload["chain"] = {
                    "found": True,
                    "orders": [s.order for s in chain.levels],
                    "verified": ok,
                }
            except NoChainFound as exc:
                payload["chain"] = {"found": False, "detail": str(exc)}
    return AnalysisReport("profinite", digest(raw), _caps_dict(caps), payload)


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def _catalog_checks(name: str, grp: FiniteGroup, caps: Caps, with_sc: bool) -> dict:
    verdict = is_c_group(grp, caps)
    dec = cernikova_decompose(grp, caps)
    decomposed = isinstance(dec, CernikovaDecomposition)
    entry = {
        "name": name,
        "order": grp.order,
        "c_group": verdict.c_group,
        "checks": {
            "decompose_agrees": decomposed == verdict.c_group,
            "metabelian_if_c": True,
            "squarefree_exponent_if_c": True,
            "minimal_normal_prime_if_c": True,
            "roundtrip_if_c": True,
            "sc_agrees": None,
        },
    }
    checks = entry["checks"]
    if verdict.c_group:
        dsub = Subgroup(grp, derived_mask(grp))
        d_grp, _ = subgroup_as_group(dsub)
        checks["metabelian_if_c"] = is_abelian(d_grp)
        checks["squarefree_exponent_if_c"] = _squarefree(exponent(grp))
        checks["minimal_normal_prime_if_c"] = all(
            _is_prime(s.order) for s in minimal_normal_subgroups(grp, caps))
        if decomposed:
            rebuilt, mapping = rebuild_decomposition(grp, dec, caps)
            bijective = np.unique(mapping).size == grp.order
            homomorphic = np.array_equal(mapping[rebuilt.mul],
                                         grp.mul[np.ix_(mapping, mapping)])
            checks["roundtrip_if_c"] = bool(bijective and homomorphic)
        else:
            checks["roundtrip_if_c"] = False
    if with_sc and grp.order <= caps.sc_max_order:
        checks["sc_agrees"] = is_sc_group(grp, caps) == verdict.c_group
    return entry


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def cmd_catalog(args) -> AnalysisReport:
    caps = _caps_from_args(args)
    entries = []
    for name, grp in catalog.build_all(caps):
        entries.append(_catalog_checks(name, grp, caps, args.sc))
    all_pass = all(v in (True, None) for e in entries for v in e["checks"].values())
    payload = {"entries": entries, "all_pass": all_pass}
    return AnalysisReport("catalog", digest({"catalog": catalog.names()}),
                          _caps_dict(caps), payload)


def _add_cap_flags(p: argparse.ArgumentParser):
    p.add_argument("--max-order", type=int, default=None,
                   help="override the construction order cap")
    p.add_argument("--max-subgroups", type=int, default=None,
                   help="override the subgroup count cap")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock timing (breaks byte-determinism)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permutable",
                                     description="finite C-group analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="analyze one group description file")
    p_an.add_argument("file")
    p_an.add_argument("--sc", action="store_true",
                      help="also run the (expensive) SC-group check")
    _add_cap_flags(p_an)

    p_pro = sub.add_parser("profinite", help="analyze a truncated inverse system")
    p_pro.add_argument("file", nargs="?", default=None)
    p_pro.add_argument("--family", choices=["pq-power", "prime-column", "elementary"])
    p_pro.add_argument("--p", type=int, default=None)
    p_pro.add_argument("--q", type=int, default=None)
    p_pro.add_argument("--depth", type=int, default=3)
    _add_cap_flags(p_pro)

    p_cat = sub.add_parser("catalog", help="run the invariant suite on the bundled catalog")
    p_cat.add_argument("--sc", action="store_true",
                       help="include the SC cross-check on small entries")
    _add_cap_flags(p_cat)
    return parser


_COMMANDS = {"analyze": cmd_analyze, "profinite": cmd_profinite, "catalog": cmd_catalog}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        report = _COMMANDS[args.command](args)
    except _CAP_ERRORS as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except PermutableError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        report.timing_ms = round((time.perf_counter() - started) * 1000.0, 3)
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
