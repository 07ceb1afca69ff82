"""Compiled vs pure-Python kernels on noncrossing-partition workloads.

    python3 benchmarks/bench_kernels.py [--m 8] [--ell 3] [--repeat 3]
"""

import argparse
import time

import numpy as np

from ncpart import _kernels_py
from ncpart.generate import noncrossing_partitions

try:
    from ncpart import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=8, help="ground set size of NC(m)")
    ap.add_argument("--ell", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args(argv)

    rows = np.array([p.labels() for p in noncrossing_partitions(a.m)], dtype=np.int_)
    masks = np.ones((a.ell, len(rows)), dtype=np.uint8)
    impls = [("python", _kernels_py)] + ([("cython", _compiled)] if _compiled else [])
    print(f"NC({a.m}): {len(rows)} elements, {a.ell}-multichains")
    results = {}
    for name, mod in impls:
        t_ref, leq = best_of(lambda: mod.refinement_matrix(rows), a.repeat)
        t_chain, cnt = best_of(lambda: int(mod.chain_count(leq, masks)), a.repeat)
        t_nc, flags = best_of(lambda: [mod.noncrossing(r) for r in rows], a.repeat)
        results[name] = (t_ref, t_chain, t_nc, cnt)
        print(f"{name:>7}: refinement {t_ref:8.4f}s  chain_count {t_chain:8.4f}s  noncrossing {t_nc:8.4f}s  -> Z = {cnt}")
    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        assert py[3] == cy[3], "implementations disagree"
        print("speed-up: " + "  ".join(f"{k} x{p / max(c, 1e-9):.1f}" for k, p, c in zip(("refinement", "chain_count", "noncrossing"), py, cy)))
    else:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
