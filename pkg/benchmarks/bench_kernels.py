"""Compare the compiled and NumPy kernel backends on rank and span enumeration.

    python benchmarks/bench_kernels.py [--repeat N] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import sys
import timeit

import numpy as np

from bframe import kernels
from bframe.classify import classify_group, nu_from_mask
from bframe.gf2 import BitMatrix
from bframe.gramchar import gram_from_nu
from bframe.groups import make_zpq


def random_words(seed: int, rows: int, cols: int) -> np.ndarray:
    arr = np.random.default_rng(seed).integers(0, 2, size=(rows, cols), dtype=np.uint8)
    return np.array(BitMatrix.from_array(arr).words)


def z3cube_basis(rank: int) -> np.ndarray:
    cat = classify_group(make_zpq(3, 3))
    c = next(c for c in cat.classes if c.rank == rank)
    g = gram_from_nu(nu_from_mask(cat.partition, c.canonical_mask))
    return np.array(g.row_basis().words)


def cases():
    yield "rank 64x64", "rank", (random_words(1, 64, 64), 64)
    yield "rank 256x256", "rank", (random_words(2, 256, 256), 256)
    yield "rank 1024x1024", "rank", (random_words(3, 1024, 1024), 1024)
    yield "span r=16 n=125", "min_weight_span", (random_words(4, 16, 125),)
    yield "span r=19 n=27 (Z_3^3 class)", "min_weight_span", (z3cube_basis(19),)
    yield "span r=22 n=125", "min_weight_span", (random_words(5, 22, 125),)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json")
    args = ap.parse_args(argv)
    names = kernels.available_backends()
    backends = {n: kernels.get_backend(n) for n in names}
    if "cython" not in names:
        print("compiled backend not built; timing the NumPy backend only", file=sys.stderr)
    rows = []
    print(f"{'case':32s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn, fargs in cases():
        times, results = {}, set()
        for n, mod in backends.items():
            f = getattr(mod, fn)
            out = f(*fargs)
            # witnesses may differ between backends; the weight may not
            results.add(out[0] if fn == "min_weight_span" else out)
            times[n] = min(timeit.repeat(lambda: f(*fargs), number=1, repeat=args.repeat))
        if len(results) != 1:
            raise SystemExit(f"backends disagree on {label}: {results}")
        line = f"{label:32s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)
        rows.append({"case": label, "seconds": times})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
