"""Benchmark the compiled counting kernels against the numpy reference.

Runs the three hot paths (exponentiation tables, weighted class counts,
quadratic-residue polynomial counts) on a ladder of field sizes with both
backends, checks that the outputs agree, and prints a timing table.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--max-q Q]
"""

import argparse
import time

import numpy as np

from hfq._kernels import pyref
from hfq._kernels.common import one_minus_table
from hfq.ff import make_extension, make_prime_field

try:
    from hfq._kernels import _ckernels
except ImportError:
    _ckernels = None


FIELDS = [(101, 1), (1009, 1), (10007, 1), (11, 4), (31, 3), (101, 2)]


def _best_of(repeat, fn, *args):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def _agree(a, b):
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_agree(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def bench_field(p, k, repeat):
    ctx = make_prime_field(p) if k == 1 else make_extension(p, k)
    q = ctx.order
    exp, dlog, one_minus = ctx.tables()
    g_digits = ctx.unpack(ctx.generator)
    modulus = ctx.modulus or (0, 1)

    rows = []

    def record(name, py_fn, py_args, c_fn, c_args):
        t_py, out_py = _best_of(repeat, py_fn, *py_args)
        line = {"kernel": name, "q": q, "python_s": t_py, "cython_s": None,
                "speedup": None}
        if c_fn is not None:
            t_c, out_c = _best_of(repeat, c_fn, *c_args)
            if not _agree(out_py, out_c):
                raise AssertionError(f"backend mismatch in {name} at q={q}")
            line["cython_s"] = t_c
            line["speedup"] = t_py / t_c if t_c > 0 else float("inf")
        rows.append(line)

    record("exp_table",
           pyref.exp_table, (p, k, q, g_digits, modulus),
           _ckernels.exp_table if _ckernels else None,
           (p, k, q, g_digits, modulus))

    dz = int(dlog[ctx.from_base(2).v]) if q > 3 else 1
    l = 5 if (q - 1) % 5 == 0 else 3 if (q - 1) % 3 == 0 else 2
    args = (exp, dlog, one_minus, dz, l, 1, l - 1, 1)
    record("triple_class_counts",
           pyref.triple_class_counts, args,
           _ckernels.triple_class_counts if _ckernels else None, args)

    coeffs = np.zeros((k, 4), dtype=np.int64)
    coeffs[0] = [1, 0, 0, 1]
    args = (p, k, q, coeffs, ctx.reduction_cols(), dlog)
    record("poly_quad_counts",
           pyref.poly_quad_counts, args,
           _ckernels.poly_quad_counts if _ckernels else None, args)

    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="best-of-N timing (default 3)")
    parser.add_argument("--max-q", type=int, default=1 << 20,
                        help="skip fields larger than this")
    args = parser.parse_args()

    if _ckernels is None:
        print("compiled backend unavailable; timing the reference only")

    print(f"{'kernel':<22}{'q':>9}{'python':>12}{'cython':>12}{'speedup':>9}")
    for p, k in FIELDS:
        if p ** k > args.max_q:
            continue
        for row in bench_field(p, k, args.repeat):
            cy = f"{row['cython_s'] * 1e3:9.2f}ms" if row["cython_s"] else \
                "        --"
            sp = f"{row['speedup']:8.1f}x" if row["speedup"] else "       --"
            print(f"{row['kernel']:<22}{row['q']:>9}"
                  f"{row['python_s'] * 1e3:9.2f}ms {cy}{sp}")
    print("\nbackends agree on all outputs" if _ckernels else "")


if __name__ == "__main__":
    main()
