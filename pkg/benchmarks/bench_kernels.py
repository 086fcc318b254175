#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Micro-benchmarks call both backend modules directly; the end-to-end rows run
the relation pipeline in a subprocess with and without CYMIRROR_NO_NUMBA so
each process picks one backend at import time.

Usage: python benchmarks/bench_kernels.py [--skip-e2e]
"""

import argparse
import os
import random
import subprocess
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cymirror import _kernels_numba, _kernels_numpy  # noqa: E402
from cymirror._packing import key_of  # noqa: E402

P = 10007


def synth_poly(rng, nterms, degree, pos_range):
    seen = {}
    while len(seen) < nterms:
        exps = [0] * 6
        for _ in range(degree):
            exps[rng.randrange(6)] += 1
        key = key_of(rng.randrange(1, pos_range + 1), exps)
        seen[key] = rng.randrange(1, P)
    keys = np.array(sorted(seen, reverse=True), np.int64)
    cos = np.array([seen[k] for k in keys], np.int64)
    return keys, cos


def bench(fn, *args, repeat=200):
    fn(*args)  # warm-up (and numba compilation)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def micro():
    rng = random.Random(0)
    ka, ca = synth_poly(rng, 4000, 12, 5)
    kb, cb = synth_poly(rng, 4000, 12, 5)
    kr, cr = synth_poly(rng, 40, 6, 1)
    kr = kr - (kr & (15 << 36)) + (15 << 36)  # force ring position field
    rows = []
    for name, mod in (("numba", _kernels_numba), ("numpy", _kernels_numpy)):
        t_merge = bench(mod.merge_axpy, ka, ca, kb, cb, 7, 0, P)
        t_mul = bench(mod.poly_mul, ka, ca, kr, cr, P, repeat=20)
        rows.append((name, t_merge * 1e6, t_mul * 1e6))
    print(f"{'backend':<8} {'merge_axpy (us)':>16} {'poly_mul (us)':>14}")
    for name, tm, tp in rows:
        print(f"{name:<8} {tm:>16.1f} {tp:>14.1f}")
    if rows[1][1] > 0:
        print(f"merge speedup: {rows[1][1] / rows[0][1]:.1f}x, "
              f"poly_mul speedup: {rows[1][2] / rows[0][2]:.1f}x")


SNIPPET = """
import time
from cymirror.exactnum import GF
from cymirror.gdreduce import ReductionContext, run_relation_pipeline
from cymirror._kernels import BACKEND
field = GF(10007)
t0 = time.perf_counter()
ctx = ReductionContext(field, 5)
t1 = time.perf_counter()
run_relation_pipeline([10007, 10009], lambda_count=4, seed=0)
t2 = time.perf_counter()
print(f"{BACKEND}: one fiber's bases {t1 - t0:.2f}s, full pipeline {t2 - t1:.2f}s")
"""


def end_to_end():
    sys.stdout.flush()
    env_base = dict(os.environ, PYTHONPATH=os.path.join(os.path.dirname(__file__), "..", "src"))
    for label, extra in (("numba", {}), ("numpy", {"CYMIRROR_NO_NUMBA": "1"})):
        env = dict(env_base, **extra)
        subprocess.run([sys.executable, "-c", SNIPPET], env=env, check=True)


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--skip-e2e", action="store_true", help="micro-benchmarks only")
    args = parser.parse_args()
    micro()
    if not args.skip_e2e:
        print("\nend-to-end (relation pipeline, two primes, four fibers each):")
        end_to_end()
