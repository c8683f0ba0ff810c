"""Backend dispatch for the table kernels.

PERMUTABLE_BACKEND=numpy forces the pure-numpy path; PERMUTABLE_BACKEND=numba
insists on the jitted path (import error becomes fatal).  Unset, numba is
used when importable and numpy otherwise.  Both backends are value-identical;
benchmarks/bench_backends.py compares their speed.
"""

from __future__ import annotations

import os

_requested = os.environ.get("PERMUTABLE_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(f"PERMUTABLE_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numpy":
    from . import _kernels_numpy as _impl
elif _requested == "numba":
    from . import _kernels_numba as _impl
else:
    try:
        from . import _kernels_numba as _impl
    except ImportError:  # pragma: no cover - exercised only without numba
        from . import _kernels_numpy as _impl

BACKEND = _impl.BACKEND
closure = _impl.closure
assoc_violation = _impl.assoc_violation
assoc_violation_sampled = _impl.assoc_violation_sampled
element_orders = _impl.element_orders
set_product = _impl.set_product
commutator_set = _impl.commutator_set
is_closed = _impl.is_closed
