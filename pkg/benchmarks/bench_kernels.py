"""Compare the compiled and pure-Python cyclotomic kernels.

    python benchmarks/bench_kernels.py [--repeat 2000]

Part one times ``Reducer.mul`` directly for several field orders.  Part two
times a full invariant evaluation in a subprocess per backend, so the
backend is fixed at import exactly as in normal use.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from ospq import kernels
from ospq.exactnum import _field

MACRO = """
import time
from ospq import build_tables, rt_invariant, kernels
from ospq.surgery import seifert_star
t = build_tables(2, 5)
g = seifert_star(-1, [(2, 1), (3, 1), (5, 2)])
start = time.perf_counter()
v = rt_invariant(g, t)
print(kernels.BACKEND, len(g), round(time.perf_counter() - start, 4), v.embed())
"""


def micro(repeat):
    rng = random.Random(1)
    print(f"{'order':>6} {'degree':>6} {'python us':>10} {'cython us':>10} {'speedup':>8}")
    for M in (24, 40, 56, 88, 120):
        F = _field(M)
        rows = [list(r) for r in F.rows]
        py = kernels.PyReducer(F.degree, rows)
        pairs = [([rng.randint(-50, 50) for _ in range(F.degree)],
                  [rng.randint(-50, 50) for _ in range(F.degree)]) for _ in range(64)]
        timings = {}
        impls = {"python": py}
        if kernels.CompiledReducer is not None:
            impls["cython"] = kernels.CompiledReducer(F.degree, rows)
        for name, red in impls.items():
            start = time.perf_counter()
            for i in range(repeat):
                a, b = pairs[i % 64]
                red.mul(a, b)
            timings[name] = (time.perf_counter() - start) / repeat * 1e6
        cy = timings.get("cython")
        speed = f"{timings['python'] / cy:8.1f}" if cy else "     n/a"
        print(f"{M:6d} {F.degree:6d} {timings['python']:10.2f} {cy if cy else float('nan'):10.2f} {speed}")


def macro():
    for pure in (True, False):
        env = dict(os.environ)
        env.pop("OSPQ_PURE_PYTHON", None)
        if pure:
            env["OSPQ_PURE_PYTHON"] = "1"
        out = subprocess.run([sys.executable, "-c", MACRO], env=env, capture_output=True, text=True, check=True)
        backend, nv, secs, value = out.stdout.split(maxsplit=3)
        print(f"invariant of a {nv}-vertex star at (n,k)=(2,5): {backend:7s} {secs} s")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=2000)
    args = p.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    micro(args.repeat)
    macro()


if __name__ == "__main__":
    main()
