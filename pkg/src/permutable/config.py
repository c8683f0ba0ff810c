"""Size caps that keep the brute-force searches at desk scale.

All caps are configurable per call; `PERMUTABLE_MAX_ORDER` overrides the
construction cap from the environment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_MAX_ORDER = "PERMUTABLE_MAX_ORDER"


@dataclass(frozen=True)
class Caps:
    max_order: int = 512          # largest constructible group
    max_lattice_order: int = 200  # largest group for full subgroup enumeration
    max_subgroups: int = 20000    # lattice size limit
    sc_max_order: int = 24        # is_sc_group is doubly exponential in spirit
    max_system_order: int = 2000  # sum of level orders of an inverse system

    def with_overrides(self, **kwargs) -> "Caps":
        updates = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **updates) if updates else self


def default_caps() -> Caps:
    caps = Caps()
    env = os.environ.get(ENV_MAX_ORDER)
    if env:
        caps = replace(caps, max_order=int(env))
    return caps
