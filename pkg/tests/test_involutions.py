import pytest

from brane_atlas.errors import DomainError, ParseError
from brane_atlas.involutions import (
    LatticeInvolution,
    cartan_partner,
    from_diagram_automorphism,
    induced_weyl_automorphism,
    resolve_sigma,
)
from brane_atlas.lattice import IntegerMatrix
from brane_atlas.rootdatum import build_datum
from brane_atlas.weyl import generate

M = IntegerMatrix.from_rows
CASES = [
    ("A1", "compact"), ("A2", "split"), ("A2", "flip"), ("A3", "split"), ("B2", "split"), ("G2", "split"),
    ("D4", "flip"), ("D5", "split"), ("E6", "split"), ("A1xA1", "swap"), ("GL2", "split"),
    ("A2xA2", "swap"), ("A1xA1", "perm:2,1"),
]


def test_examples():
    assert resolve_sigma(build_datum("A1"), "id", "+").S == M([[1]])
    assert resolve_sigma(build_datum("A1xA1"), "swap", "-").S == M([[0, 1], [1, 0]])
    assert resolve_sigma(build_datum("A2"), "flip", "-").S == M([[0, 1], [1, 0]])


def test_induced():
    d = build_datum("A1xA1")
    W = generate(d)
    sig = induced_weyl_automorphism(resolve_sigma(d, "swap", "-"), W)
    a, b = W.generators
    assert sig[a] == b and sig[b] == a
    d = build_datum("A2")
    W = generate(d)
    sig = induced_weyl_automorphism(resolve_sigma(d, "flip", "-"), W)
    rotations = [w for w in range(6) if W.element_order(w) == 3]
    assert sorted(sig[w] for w in rotations) == sorted(rotations)
    refl = [w for w in range(6) if W.element_order(w) == 2]
    assert sum(1 for w in refl if sig[w] != w) == 2


@pytest.mark.parametrize("label, spec", CASES)
def test_partner_same_matrix_and_roots(label, spec):
    d = build_datum(label)
    minus = resolve_sigma(d, spec, "-")
    plus = cartan_partner(minus)
    assert plus.S == minus.S and plus.epsilon == "+"
    assert resolve_sigma(d, spec, "+").S == minus.S
    S = minus.S
    assert (S @ S).is_identity()
    Sinv = S.inverse()
    roots = set(d.roots)
    for r in d.roots:
        img = tuple(sum(r[i] * Sinv[i, j] for i in range(d.s)) for j in range(d.s))
        assert img in roots


def test_not_involution():
    with pytest.raises(DomainError):
        LatticeInvolution(M([[0, 1], [-1, 0]]), "+", ())


def test_bad_specs():
    d = build_datum("B2")
    with pytest.raises(DomainError):
        resolve_sigma(d, "flip", "+")
    with pytest.raises(ParseError):
        resolve_sigma(d, "wobble", "+")
    with pytest.raises(DomainError):
        from_diagram_automorphism(build_datum("A1xA2"), (1, 0, 2), "+")


def test_painted_accepted():
    inv = resolve_sigma(build_datum("A2"), "split;painted=1", "-")
    assert inv.painted == (1,)


def test_gl3_split_needs_central_inversion():
    d = build_datum("GL3")
    with pytest.raises(DomainError):
        resolve_sigma(d, "split", "-")
    S = resolve_sigma(d, "split", "-", -1).S
    assert S == M([[0, 0, -1], [0, -1, 0], [-1, 0, 0]])
