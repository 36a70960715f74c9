"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import timeit

from k3disc import _pykernels, kernels
from k3disc.lattice import e8_cartan, k3_lattice

try:
    from k3disc import _kernels
except ImportError:
    _kernels = None


def cases():
    e8 = [list(r) for r in e8_cartan()]
    k3 = [list(r) for r in k3_lattice().gram]
    m = 1 << 12
    table = _pykernels.affine_values_mod([[2, 1], [1, 2]], m, [1, 0], 1, 64)
    yield "box_hits  E8 norm 2, box 2", "box_hits", (e8, 2, 2, None, 1, 10 ** 6, True)
    yield "box_hits  rank 4 sub of K3, box 3", "box_hits", ([r[:4] for r in k3[:4]], 3, 0, None, 1, 10 ** 6, True)
    yield "affine_values_mod  rank 2, m = 4096, span 512", "affine_values_mod", ([[2, 1], [1, 2]], m, [1, 0], 1, 512)
    yield "sumset_mod  m = 4096", "sumset_mod", (table, table, m)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"dispatch backend: {kernels.BACKEND}")
    if _kernels is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'case':46s} {'python (s)':>12s} {'cython (s)':>12s} {'speedup':>8s}")
    for name, fn, a in cases():
        py = min(timeit.repeat(lambda: getattr(_pykernels, fn)(*a), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{name:46s} {py:12.4f} {'-':>12s} {'-':>8s}")
            continue
        cy = min(timeit.repeat(lambda: getattr(_kernels, fn)(*a), number=1, repeat=args.repeat))
        assert getattr(_kernels, fn)(*a) == getattr(_pykernels, fn)(*a)
        print(f"{name:46s} {py:12.4f} {cy:12.4f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
