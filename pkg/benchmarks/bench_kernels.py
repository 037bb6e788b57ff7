"""Compare the compiled and pure-Python kernels.

Micro-benchmarks call both kernel modules directly on the same inputs; the
end-to-end timing builds Groebner bases in subprocesses with and without
``QKFLAG_PURE_PYTHON``.

    python3 benchmarks/bench_kernels.py [--repeat N] [--skip-groebner]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from qkflag import _kernel_py
from qkflag.polyalg.numbers import QQ

try:
    from qkflag import _kernel_c
except ImportError:
    _kernel_c = None

GB_SNIPPET = """
import time
from qkflag import _kernel
from qkflag.context import FlagContext
from qkflag.qkring import QuantumKRing
t = time.perf_counter()
QuantumKRing(FlagContext({rank}, {mode!r}{extra}))
print(_kernel.IMPLEMENTATION, time.perf_counter() - t)
"""


def random_poly(rng, nvars, nterms, deg):
    out = {}
    while len(out) < nterms:
        e = tuple(rng.randrange(deg + 1) for _ in range(nvars))
        out[e] = QQ(rng.randrange(-9, 10) or 1, rng.randrange(1, 5))
    return out


def micro(repeat):
    rng = random.Random(7)
    p = random_poly(rng, 6, 60, 4)
    q = random_poly(rng, 6, 60, 4)
    lms = [tuple(rng.randrange(3) for _ in range(6)) for _ in range(40)]
    monos = [tuple(rng.randrange(6) for _ in range(6)) for _ in range(500)]
    rows = []
    kernels = [("python", _kernel_py)] + ([("cython", _kernel_c)] if _kernel_c else [])
    for name, k in kernels:
        t_mul = min(timeit.repeat(lambda: k.poly_mul(p, q), number=20, repeat=repeat)) / 20
        t_red = min(timeit.repeat(lambda: [k.find_reducer(m, lms) for m in monos],
                                  number=20, repeat=repeat)) / 20

        def addmul():
            acc = dict(p)
            for s in lms[:10]:
                k.addmul_inplace(acc, QQ(-1, 3), s, q)

        t_add = min(timeit.repeat(addmul, number=20, repeat=repeat)) / 20
        rows.append((name, t_mul, t_red, t_add))
    return rows


def groebner_timing(rank, mode, extra, pure):
    env = dict(os.environ)
    if pure:
        env["QKFLAG_PURE_PYTHON"] = "1"
    else:
        env.pop("QKFLAG_PURE_PYTHON", None)
    code = GB_SNIPPET.format(rank=rank, mode=mode, extra=extra)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-groebner", action="store_true")
    args = ap.parse_args()
    if _kernel_c is None:
        print("compiled kernel not built; only the Python kernel is timed")
    print(f"{'kernel':8} {'poly_mul':>12} {'find_reducer':>14} {'addmul':>12}")
    rows = micro(args.repeat)
    for name, a, b, c in rows:
        print(f"{name:8} {a * 1e3:10.3f}ms {b * 1e3:12.3f}ms {c * 1e3:10.3f}ms")
    if len(rows) == 2:
        print("speedup  " + "  ".join(f"{x / y:10.2f}x" for x, y in zip(rows[0][1:], rows[1][1:])))
    if args.skip_groebner:
        return
    cases = [(2, "equivariant", ""), (3, "nonequivariant", "")]
    for rank, mode, extra in cases:
        res = [groebner_timing(rank, mode, extra, pure) for pure in (True, False)]
        print(f"groebner r={rank} {mode}: " + ", ".join(f"{n} {t:.2f}s" for n, t in res))


if __name__ == "__main__":
    main()
