"""Backend agreement: the numba and numpy kernels must be value-identical."""

import numpy as np
import pytest

from permutable import _kernels_numba, _kernels_numpy, catalog

BACKENDS = [_kernels_numpy, _kernels_numba]
SAMPLE = ["S3", "C12", "D6", "Q8", "C2^4", "ES27"]


def _pair(name):
    g = catalog.build(name)
    return g.mul, g.inv


@pytest.mark.parametrize("name", SAMPLE)
def test_closure_agrees(name):
    mul, _ = _pair(name)
    rng = np.random.default_rng(3)
    for _ in range(10):
        seed = rng.random(mul.shape[0]) < 0.2
        masks = [b.closure(mul, seed) for b in BACKENDS]
        assert np.array_equal(masks[0], masks[1])


@pytest.mark.parametrize("name", SAMPLE)
def test_orders_and_commutators_agree(name):
    mul, inv = _pair(name)
    assert np.array_equal(_kernels_numpy.element_orders(mul),
                          _kernels_numba.element_orders(mul))
    assert np.array_equal(_kernels_numpy.commutator_set(mul, inv),
                          _kernels_numba.commutator_set(mul, inv))


@pytest.mark.parametrize("name", SAMPLE)
def test_set_product_and_closed_agree(name):
    mul, _ = _pair(name)
    n = mul.shape[0]
    rng = np.random.default_rng(5)
    for _ in range(5):
        a = np.unique(rng.integers(0, n, 3))
        b = np.unique(rng.integers(0, n, 3))
        assert np.array_equal(_kernels_numpy.set_product(mul, a, b),
                              _kernels_numba.set_product(mul, a, b))
        mask = _kernels_numpy.closure(mul, np.isin(np.arange(n), a))
        assert _kernels_numpy.is_closed(mul, mask)
        assert _kernels_numba.is_closed(mul, mask)


def test_assoc_violation_detects_corruption():
    mul, _ = _pair("C12")
    assert _kernels_numpy.assoc_violation(mul) == (-1, -1, -1)
    assert _kernels_numba.assoc_violation(mul) == (-1, -1, -1)
    bad = np.array(mul)
    bad[1, 2] = (bad[1, 2] + 1) % 12
    v_np = _kernels_numpy.assoc_violation(bad)
    v_nb = _kernels_numba.assoc_violation(bad)
    assert v_np != (-1, -1, -1)
    assert tuple(v_np) == tuple(v_nb)


def test_backend_env_selects_numpy():
    import os
    import subprocess
    import sys
    env = dict(os.environ, PERMUTABLE_BACKEND="numpy")
    out = subprocess.run(
        [sys.executable, "-c", "import permutable; print(permutable.BACKEND)"],
        env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
