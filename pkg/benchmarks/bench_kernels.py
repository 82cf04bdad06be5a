"""Time the compiled kernels against the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py``.
"""
from __future__ import annotations

import random
import timeit

from critsurf import _pykernels, samples
from critsurf.coloring import masks

try:
    from critsurf import _ckernels
except ImportError:
    _ckernels = None


def _cases(seed=0, count=200, n=30):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.15]
        out.append((masks(n, edges), [7] * n))
    return out


def bench(label, fn, number):
    t = min(timeit.repeat(fn, number=number, repeat=3)) / number
    print(f"{label:<28} {t * 1e3:9.3f} ms")
    return t


def main():
    cases = _cases()
    G = samples.groetzsch_projective()
    color = bytearray(len(G.t0))
    starts = range(len(G.t0))
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    times = {}
    for name, mod in backends:
        times[name, "solve"] = bench(f"solve x{len(cases)} [{name}]",
                                     lambda: [mod.solve(a, d) for a, d in cases], 3)
        times[name, "code"] = bench(f"canonical_code [{name}]",
                                    lambda: mod.canonical_code(G.t0, G.t1, G.t2, color, starts), 5)
    if _ckernels:
        for k in ("solve", "code"):
            print(f"speedup {k:<20} {times['python', k] / times['cython', k]:9.1f}x")
    else:
        print("compiled kernels not available")


if __name__ == "__main__":
    main()
