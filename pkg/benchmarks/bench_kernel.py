"""Compiled vs pure-Python reduction kernel on boundary matrices.

    python3 benchmarks/bench_kernel.py [--repeat N]

Prints, per complex and degree, the matrix shape, both timings, the speedup
and whether the ranks agree.
"""

import argparse
import time

from stratkit import desc as sd, kernel
from stratkit.complex import barycentric


def cases():
    yield "sd(CP2)", barycentric(sd.atom("CP2").fc).complex
    yield "S2 x S2", sd.realize(sd.Product(sd.atom("S2"), sd.atom("S2"))).complex
    yield "sd(S(T2))", barycentric(sd.realize(sd.Suspension(sd.atom("T2")))).complex
    yield "S1 x C(S1 x C(S1))", sd.realize(sd.Product(sd.atom("S1"),
                                                      sd.Cone(sd.Product(sd.atom("S1"), sd.Cone(sd.atom("S1")))))).complex


def timed(fn, repeat):
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return out, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernel._ckernel is None:
        print("compiled kernel not built; nothing to compare")
        return
    print(f"{'complex':24} {'k':>2} {'shape':>14} {'python s':>9} {'cython s':>9} {'speedup':>8}  ranks")
    total = {"python": 0.0, "cython": 0.0}
    for name, K in cases():
        for k in range(1, K.dim + 1):
            cols = K.boundary_columns(k)
            nrows = len(K.simplices[k - 1])
            rp, tp = timed(lambda: kernel.rank(cols, nrows, impl="python"), args.repeat)
            rc, tc = timed(lambda: kernel.rank(cols, nrows, impl="cython"), args.repeat)
            total["python"] += tp
            total["cython"] += tc
            shape = f"{nrows}x{len(cols)}"
            print(f"{name:24} {k:>2} {shape:>14} {tp:9.4f} {tc:9.4f} {tp / tc:8.1f}  "
                  f"{'agree' if rp == rc else f'DIFFER {rp} {rc}'}")
    print(f"{'total':24} {'':>2} {'':>14} {total['python']:9.4f} {total['cython']:9.4f} "
          f"{total['python'] / total['cython']:8.1f}")


if __name__ == "__main__":
    main()
