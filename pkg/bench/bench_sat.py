#!/usr/bin/env python3
"""Benchmark: pure-Python vs compiled SAT core on random 3-CNF and BMC loads.

Usage: python bench/bench_sat.py [--n VARS] [--instances K] [--seed S]
"""

from __future__ import annotations

import argparse
import random
import time


def random_3cnf(n: int, rng: random.Random) -> list[list[int]]:
    m = int(4.26 * n)  # near the satisfiability phase transition
    return [[rng.choice((1, -1)) * v for v in rng.sample(range(1, n + 1), 3)]
            for _ in range(m)]


def bench_core(core, instances) -> tuple[float, list[int]]:
    t0 = time.perf_counter()
    out = []
    for clauses, n in instances:
        status, _ = core.solve_formula([list(c) for c in clauses], n)
        out.append(status)
    return time.perf_counter() - t0, out


def bench_bmc(label: str) -> None:
    """Time the end-to-end checker on a catalog problem with each core."""
    import os
    import subprocess
    import sys

    snippet = (
        "import time\n"
        "from svsec.catalog import list_problems\n"
        "from svsec.catalog.problems import design_text, instantiate_property_text\n"
        "from svsec.check import check_design\n"
        "t0 = time.perf_counter()\n"
        "for spec in list_problems(cwe=1261):\n"
        "    check_design(design_text(spec.correct_file), spec.module_name,\n"
        "                 instantiate_property_text(spec))\n"
        "print(f'{time.perf_counter() - t0:.3f}')\n"
    )
    env = dict(os.environ, SVSEC_SAT_CORE=label)
    took = subprocess.run([sys.executable, "-c", snippet], env=env,
                          capture_output=True, text=True, check=True)
    print(f"  k-induction (3 ECC designs), {label:8s}: "
          f"{float(took.stdout.strip()):7.3f} s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=120, help="variables per instance")
    ap.add_argument("--instances", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    from svsec.engine import sat
    from svsec.engine.sat import pycore

    rng = random.Random(args.seed)
    instances = [(random_3cnf(args.n, rng), args.n)
                 for _ in range(args.instances)]

    print(f"random 3-CNF, {args.n} vars x {args.instances} instances:")
    t_py, r_py = bench_core(pycore, instances)
    print(f"  python   core: {t_py:7.3f} s")
    if sat.COMPILED:
        from svsec.engine.sat import _satcore
        t_cy, r_cy = bench_core(_satcore, instances)
        assert r_py == r_cy, "cores disagree"
        print(f"  compiled core: {t_cy:7.3f} s   ({t_py / t_cy:.2f}x speedup)")
    else:
        print("  compiled core not available (pure-Python install)")

    print("end-to-end verification:")
    bench_bmc("python")
    if sat.COMPILED:
        bench_bmc("compiled")


if __name__ == "__main__":
    main()
