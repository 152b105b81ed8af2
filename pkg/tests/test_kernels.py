"""Compiled and pure-Python kernels must agree."""

import random

import pytest

from brane_atlas import _pykernels, kernels
from brane_atlas.involutions import induced_weyl_automorphism, resolve_sigma
from brane_atlas.rootdatum import build_datum
from brane_atlas.weyl import generate

try:
    from brane_atlas import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def test_backend_name():
    assert kernels.BACKEND in ("compiled", "python")


@needs_ext
@pytest.mark.parametrize("label, sigma", [("A2", "split"), ("B3", "compact"), ("A1xA1", "swap"), ("G2", "compact")])
def test_group_kernels_agree(label, sigma):
    d = build_datum(label)
    W = generate(d)
    sig = induced_weyl_automorphism(resolve_sigma(d, sigma, "-"), W)
    tab = W.table
    a = list(_ckernels.twisted_class_labels(tab, W.inverse, sig))
    b = list(_pykernels.twisted_class_labels(tab, W.inverse, sig))
    assert a == b
    for w in range(0, W.order, max(1, W.order // 7)):
        assert list(_ckernels.stabilizer(tab, W.inverse, sig, w)) == list(_pykernels.stabilizer(tab, W.inverse, sig, w))


@needs_ext
def test_census_agrees_on_random_systems():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 3)
        A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        N = rng.choice([1, 2, 3, 4, 6])
        Q = N * rng.choice([1, 2, 3])
        rhs = [rng.randint(-Q, Q) for _ in range(n)]
        assert _ckernels.census_count(A, rhs, N, Q) == _pykernels.census_count(A, rhs, N, Q)


@needs_ext
def test_mul_table_agrees():
    W = generate(build_datum("A3"))
    assert [list(r) for r in W.table] == [
        [W.index_of_matrix(W.matrices[a] @ W.matrices[b]) for b in range(W.order)] for a in range(W.order)
    ]


def test_forced_python_backend(monkeypatch):
    import importlib

    monkeypatch.setenv("BRANE_ATLAS_BACKEND", "python")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.census_count([[2, 0], [0, 2]], [0, 0], 2, 2) == 4
    finally:
        monkeypatch.delenv("BRANE_ATLAS_BACKEND")
        importlib.reload(kernels)
