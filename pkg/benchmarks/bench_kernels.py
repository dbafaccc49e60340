"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 5]

Workloads: Laurent products from the refined primitive formula (g = 5, n = 10)
and lattice-index row reductions for every small diagram / loop datum.
"""

from __future__ import annotations

import argparse
import random
import timeit

from pearlcount import _pykernels
from pearlcount.diagrams import enumerate_diagrams
from pearlcount.invariants import s_coefficient
from pearlcount.mult import lattice_matrix, loop_data

try:
    from pearlcount import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def poly_workload():
    rng = random.Random(7)
    polys = [s_coefficient(a).terms for a in range(1, 11)]
    prods = []
    for _ in range(200):
        p = dict(rng.choice(polys))
        for _ in range(3):
            prods.append((p, rng.choice(polys)))
            p = _pykernels.poly_mul(p, rng.choice(polys))
    return prods


def matrix_workload():
    mats = []
    for kind in ("point", "fls"):
        for g in (2, 3, 4):
            for d1, d2 in ((1, 2), (2, 2), (1, 4)):
                for d in enumerate_diagrams(g, d1, d2, kind):
                    for ld in loop_data(d):
                        mats.append(lattice_matrix(d, ld))
    return mats


def bench(mod, polys, mats, repeat):
    pm = min(timeit.repeat(lambda: [mod.poly_mul(a, b) for a, b in polys], number=1, repeat=repeat))
    ed = min(timeit.repeat(lambda: [mod.echelon_diagonal(m) for m in mats], number=1, repeat=repeat))
    return pm, ed


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    polys, mats = poly_workload(), matrix_workload()
    # both backends must agree before timing means anything
    if _ckernels is not None:
        assert all(_ckernels.poly_mul(a, b) == _pykernels.poly_mul(a, b) for a, b in polys)
        assert all(_ckernels.echelon_diagonal(m) == _pykernels.echelon_diagonal(m) for m in mats)
    print(f"{len(polys)} Laurent products, {len(mats)} lattice matrices")
    py = bench(_pykernels, polys, mats, args.repeat)
    print(f"python    poly_mul {py[0]*1e3:8.2f} ms   echelon {py[1]*1e3:8.2f} ms")
    if _ckernels is None:
        print("compiled  not built")
        return
    c = bench(_ckernels, polys, mats, args.repeat)
    print(f"compiled  poly_mul {c[0]*1e3:8.2f} ms   echelon {c[1]*1e3:8.2f} ms")
    print(f"speedup   poly_mul {py[0]/c[0]:8.2f}x     echelon {py[1]/c[1]:8.2f}x")


if __name__ == "__main__":
    main()
