#!/usr/bin/env python3
"""Benchmark: compiled vs interpreted sparse-polynomial kernel.

Times raw sparse products at several sizes plus two end-to-end composition
workloads, once per available kernel, and prints a comparison table.

    python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import random
import time

from pforms import PFormCtx, compose, dobbertin_form, ff_make, iterate, kernels
from pforms.poly import MPoly


def random_poly(ctx, rng, nterms, maxdeg):
    terms = {}
    while len(terms) < nterms:
        e = tuple(rng.randint(0, maxdeg) for _ in range(ctx.n))
        terms[e] = rng.randint(1, ctx.field.q - 1)
    return MPoly(ctx, terms)


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    rng = random.Random(20240101)
    f2 = PFormCtx(ff_make(2), 3)
    f9 = PFormCtx(ff_make(3, 2), 3)
    pairs = [
        ("F2 n=3, 100x100 terms", random_poly(f2, rng, 100, 12), random_poly(f2, rng, 100, 12)),
        ("F2 n=3, 400x400 terms", random_poly(f2, rng, 400, 30), random_poly(f2, rng, 400, 30)),
        ("F9 n=3, 300x300 terms", random_poly(f9, rng, 300, 40), random_poly(f9, rng, 300, 40)),
    ]
    out = [(label, lambda a=a, b=b: a * b) for label, a, b in pairs]
    q3 = dobbertin_form(3)
    out.append(("iterate(Q_3, 3)", lambda: iterate(q3, 3)))
    q4 = dobbertin_form(4)
    out.append(("Q_4 o Q_4", lambda: compose(q4, q4)))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = kernels.available()
    print(f"kernels available: {', '.join(names)}")
    rows = []
    for label, fn in workloads():
        timings = {}
        for name in names:
            kernels.use(name)
            timings[name] = bench(fn, args.repeat)
        rows.append((label, timings))
    kernels.use("auto")

    width = max(len(label) for label, _ in rows)
    header = f"{'workload':<{width}}  " + "".join(f"{n:>12}" for n in names)
    if len(names) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for label, timings in rows:
        line = f"{label:<{width}}  " + "".join(f"{timings[n] * 1000:>10.2f}ms" for n in names)
        if len(names) > 1:
            line += f"{timings['python'] / timings['cython']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
