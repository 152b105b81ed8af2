"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from brane_atlas import _pykernels
from brane_atlas.rootdatum import build_datum
from brane_atlas.weyl import generate

try:
    from brane_atlas import _ckernels
except ImportError:
    _ckernels = None


def _table_inputs(W):
    n_roots = len(W.datum.coroots)
    keyed = []
    for k, p in enumerate(W.perms):
        key = 0
        for c in W._key_cols:
            key = key * n_roots + p[c]
        keyed.append((key, k))
    keyed.sort()
    return W.perms, W._key_cols, [k for k, _ in keyed], [k for _, k in keyed], n_roots


def workloads():
    W = generate(build_datum("F4"))
    tab = W.table
    arr = np.ascontiguousarray(tab, dtype=np.intc)
    inv = W.inverse
    sig = W.identity_automorphism
    mt = _table_inputs(W)
    census_A = [[2, 0, 1, 0], [0, 2, 0, 1], [1, 0, 2, 0], [0, 1, 0, 2]]
    return {
        f"mul_table |W|={W.order}": (lambda k: k.mul_table(*mt), lambda k: k.mul_table(*mt)),
        f"twisted_class_labels |W|={W.order}": (
            lambda k: k.twisted_class_labels(tab, inv, sig),
            lambda k: k.twisted_class_labels(arr, inv, sig),
        ),
        "stabilizer x64": (
            lambda k: [k.stabilizer(tab, inv, sig, w) for w in range(64)],
            lambda k: [k.stabilizer(arr, inv, sig, w) for w in range(64)],
        ),
        "census_count 12^4": (
            lambda k: k.census_count(census_A, [0, 0, 0, 0], 12, 12),
            lambda k: k.census_count(census_A, [0, 0, 0, 0], 12, 12),
        ),
    }


def _same(a, b):
    a = a.tolist() if hasattr(a, "tolist") else a
    b = b.tolist() if hasattr(b, "tolist") else b
    return a == b


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the Python fallback is available")
    print(f"{'kernel':34s} {'python (s)':>11s} {'compiled (s)':>13s} {'speedup':>8s}")
    for name, (py_fn, c_fn) in workloads().items():
        py = min(timeit.repeat(lambda: py_fn(_pykernels), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{name:34s} {py:11.4f} {'-':>13s} {'-':>8s}")
            continue
        if not _same(py_fn(_pykernels), c_fn(_ckernels)):
            raise SystemExit(f"backends disagree on {name}")
        c = min(timeit.repeat(lambda: c_fn(_ckernels), number=1, repeat=args.repeat))
        print(f"{name:34s} {py:11.4f} {c:13.4f} {py / c:7.1f}x")


if __name__ == "__main__":
    main()
