"""Versioned JSON descriptions of groups and inverse systems.

Group descriptions:

    {"kind": "table", "table": [[...], ...]}
    {"kind": "perm", "degree": k, "generators": [[...], ...]}
    {"kind": "cyclic", "n": k}
    {"kind": "product", "factors": [desc, ...]}
    {"kind": "semidirect", "actor": desc, "space": desc, "action": [[...], ...]}

System descriptions:

    {"levels": [groupdesc, ...], "bonds": [[...], ...]}
    {"family": "pq-power" | "prime-column" | "elementary", "p": 3, "q": 2, "depth": 3}

both optionally carrying "schema_version" (defaults to 1) and, for
systems, a "subgroup" entry: {"seeds": [...]} closes the given elements
at the deepest level, {"levels": [[...], ...]} lists every level
explicitly.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional

import numpy as np

from .config import Caps, default_caps
from .errors import ParseError
from .groups import FiniteGroup, GAction, cyclic, direct_product, group_from_permutations, \
    group_from_table, semidirect_product
from .profinite import CompatibleSubgroup, InverseSystem, build_system, \
    compatible_from_top, example_system, validate_system
from .subgroups import Subgroup, subgroup_from_indices

SCHEMA_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def _expect(cond: bool, path: str, msg: str):
    if not cond:
        raise ParseError(path, msg)


def parse_group(obj, caps: Optional[Caps] = None, path: str = "$",
                name: str = "") -> FiniteGroup:
    caps = caps or default_caps()
    _expect(isinstance(obj, dict), path, "group description must be an object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    _expect(version == SCHEMA_VERSION, path, f"unsupported schema_version {version}")
    kind = obj.get("kind")
    _expect(isinstance(kind, str), path, "missing 'kind'")
    if kind == "table":
        table = obj.get("table")
        _expect(isinstance(table, list) and table, f"{path}.table", "nonempty list required")
        return group_from_table(table, name=name, caps=caps)
    if kind == "perm":
        degree = obj.get("degree")
        gens = obj.get("generators", [])
        _expect(isinstance(degree, int) and degree > 0, f"{path}.degree",
                "positive integer required")
        _expect(isinstance(gens, list), f"{path}.generators", "list required")
        return group_from_permutations(degree, gens, name=name, caps=caps)
    if kind == "cyclic":
        n = obj.get("n")
        _expect(isinstance(n, int) and n > 0, f"{path}.n", "positive integer required")
        return cyclic(n, caps=caps)
    if kind == "product":
        factors = obj.get("factors")
        _expect(isinstance(factors, list) and factors, f"{path}.factors",
                "nonempty list required")
        grp = parse_group(factors[0], caps, f"{path}.factors[0]")
        for i, f in enumerate(factors[1:], start=1):
            grp = direct_product(grp, parse_group(f, caps, f"{path}.factors[{i}]"),
                                 caps=caps)
        if name:
            grp = FiniteGroup(grp.mul, grp.inv, labels=grp.labels, name=name)
        return grp
    if kind == "semidirect":
        _expect("actor" in obj and "space" in obj and "action" in obj, path,
                "semidirect needs 'actor', 'space' and 'action'")
        actor = parse_group(obj["actor"], caps, f"{path}.actor")
        space = parse_group(obj["space"], caps, f"{path}.space")
        action = np.asarray(obj["action"], dtype=np.int64)
        return semidirect_product(GAction(actor, space, action), name=name, caps=caps)
    raise ParseError(path, f"unknown kind {kind!r}")


def load_group_file(path: str, caps: Optional[Caps] = None) -> tuple[FiniteGroup, dict]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(path, f"invalid JSON: {exc}") from exc
    return parse_group(obj, caps, name=obj.get("name", "")), obj


def parse_system(obj, caps: Optional[Caps] = None, path: str = "$"
                 ) -> tuple[Optional[InverseSystem], dict, Optional[CompatibleSubgroup]]:
    """Returns (system, validation_report, subgroup).

    The system is None when the raw bonds fail validation; the report
    carries the per-bond verdicts either way.
    """
    caps = caps or default_caps()
    _expect(isinstance(obj, dict), path, "system description must be an object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    _expect(version == SCHEMA_VERSION, path, f"unsupported schema_version {version}")
    if "family" in obj:
        fam = obj["family"]
        params = {k: obj[k] for k in ("p", "q") if k in obj}
        sys = example_system(fam, params, depth=int(obj.get("depth", 3)), caps=caps)
        report = validate_system(sys)
    else:
        levels_desc = obj.get("levels")
        bonds_desc = obj.get("bonds", [])
        _expect(isinstance(levels_desc, list) and levels_desc, f"{path}.levels",
                "nonempty list required")
        _expect(isinstance(bonds_desc, list), f"{path}.bonds", "list required")
        levels = [parse_group(d, caps, f"{path}.levels[{i}]")
                  for i, d in enumerate(levels_desc)]
        bond_maps = [np.asarray(b, dtype=np.int64) for b in bonds_desc]
        report = validate_system(levels, bond_maps)
        if not report["valid"]:
            return None, report, None
        sys = build_system(levels, bond_maps)
    sub = None
    if "subgroup" in obj:
        spec = obj["subgroup"]
        _expect(isinstance(spec, dict), f"{path}.subgroup", "object required")
        if "seeds" in spec:
            sub = compatible_from_top(sys, [int(s) for s in spec["seeds"]])
        elif "levels" in spec:
            subs = []
            _expect(len(spec["levels"]) == len(sys.levels), f"{path}.subgroup.levels",
                    "one element list per level required")
            for i, ids in enumerate(spec["levels"]):
                subs.append(subgroup_from_indices(sys.levels[i], [int(x) for x in ids]))
            sub = CompatibleSubgroup(tuple(subs))
        else:
            raise ParseError(f"{path}.subgroup", "need 'seeds' or 'levels'")
    return sys, report, sub


def load_system_file(path: str, caps: Optional[Caps] = None):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(path, f"invalid JSON: {exc}") from exc
    sys, report, sub = parse_system(obj, caps)
    return sys, report, sub, obj
