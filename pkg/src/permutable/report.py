"""Analysis reports: one structure, two faithful renderings.

JSON output is canonical (sorted keys, fixed separators) so identical
input and flags give byte-identical bytes; the text rendering mirrors the
JSON tree one-to-one.  Wall-clock timing is only populated on request,
keeping default output deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .subgroups import Subgroup

SCHEMA_VERSION = 1


def subgroup_json(sub: Optional[Subgroup]) -> Optional[dict]:
    if sub is None:
        return None
    out = {"order": sub.order, "elements": [int(i) for i in sub.indices]}
    if sub.parent.labels is not None:
        out["labels"] = [sub.parent.labels[int(i)] for i in sub.indices]
    return out


@dataclass
class AnalysisReport:
    operation: str
    input_digest: str
    caps: dict
    payload: dict
    timing_ms: Optional[float] = None
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "operation": self.operation,
            "input_digest": self.input_digest,
            "caps": self.caps,
            "timing_ms": self.timing_ms,
            **self.payload,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def to_text(self) -> str:
        lines: list[str] = []
        _render(self.to_dict(), "", lines)
        return "\n".join(lines) + "\n"


def _render(value, prefix: str, lines: list[str]):
    if isinstance(value, dict):
        for key in sorted(value):
            _render(value[key], f"{prefix}{key}." if prefix else f"{key}.", lines)
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            lines.append(f"{prefix[:-1]}: {json.dumps(value)}")
        else:
            for i, v in enumerate(value):
                _render(v, f"{prefix[:-1]}[{i}].", lines)
    else:
        lines.append(f"{prefix[:-1]}: {json.dumps(value)}")
