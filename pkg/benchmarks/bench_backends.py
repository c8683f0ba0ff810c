#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends on the hot workloads.

Usage: python3 benchmarks/bench_backends.py [repeats]

The numba timings exclude the first (compilation) call.
"""

import sys
import time

import numpy as np

from permutable import _kernels_numba, _kernels_numpy, catalog


def _workload_tables():
    out = {}
    for name in ["S3xS3", "C2^4", "ES27", "C42"]:
        g = catalog.build(name)
        out[name] = (g.mul, g.inv)
    # order-216 table for the associativity scan: S3^3
    s3 = catalog.build("S3")
    from permutable.groups import direct_product
    big = direct_product(direct_product(s3, s3), s3)
    out["S3^3"] = (big.mul, big.inv)
    return out


def bench_closure(backend, mul, rounds):
    n = mul.shape[0]
    rng = np.random.default_rng(0)
    seeds = [rng.random(n) < 0.15 for _ in range(rounds)]
    backend.closure(mul, seeds[0])                       # warm the jit
    t0 = time.perf_counter()
    for s in seeds:
        backend.closure(mul, s)
    return time.perf_counter() - t0


def bench_lattice_joins(backend, mul, rounds):
    n = mul.shape[0]
    cyclics = []
    base = np.zeros(n, dtype=bool)
    for x in range(n):
        seed = base.copy()
        seed[x] = True
        cyclics.append(backend.closure(mul, seed))
    t0 = time.perf_counter()
    for _ in range(rounds):
        for a in cyclics[: min(12, len(cyclics))]:
            for b in cyclics[: min(12, len(cyclics))]:
                backend.closure(mul, a | b)
    return time.perf_counter() - t0


def bench_assoc(backend, mul, rounds):
    backend.assoc_violation(mul)
    t0 = time.perf_counter()
    for _ in range(rounds):
        backend.assoc_violation(mul)
    return time.perf_counter() - t0


def bench_misc(backend, mul, inv, rounds):
    backend.element_orders(mul)
    backend.commutator_set(mul, inv)
    t0 = time.perf_counter()
    for _ in range(rounds):
        backend.element_orders(mul)
        backend.commutator_set(mul, inv)
    return time.perf_counter() - t0


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    tables = _workload_tables()
    print(f"{'workload':34s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    rows = [
        ("closure  S3xS3 (order 36)", bench_closure, tables["S3xS3"][0], repeats * 10),
        ("closure  S3^3 (order 216)", bench_closure, tables["S3^3"][0], repeats),
        ("joins    S3xS3 cyclic lattice", bench_lattice_joins, tables["S3xS3"][0], 2),
        ("joins    C2^4 cyclic lattice", bench_lattice_joins, tables["C2^4"][0], 2),
        ("assoc    ES27 full n^3 scan", bench_assoc, tables["ES27"][0], repeats),
        ("assoc    C42 full n^3 scan", bench_assoc, tables["C42"][0], repeats),
    ]
    for label, fn, mul, rounds in rows:
        t_np = fn(_kernels_numpy, mul, rounds)
        t_nb = fn(_kernels_numba, mul, rounds)
        print(f"{label:34s} {t_np:9.4f}s {t_nb:9.4f}s {t_np / max(t_nb, 1e-9):7.1f}x")
    for name in ["S3^3", "ES27"]:
        mul, inv = tables[name]
        t_np = bench_misc(_kernels_numpy, mul, inv, repeats)
        t_nb = bench_misc(_kernels_numba, mul, inv, repeats)
        label = f"orders+commutators {name}"
        print(f"{label:34s} {t_np:9.4f}s {t_nb:9.4f}s {t_np / max(t_nb, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
