import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brane_atlas.errors import DomainError
from brane_atlas.lattice import IntegerMatrix
from brane_atlas.torusfix import (
    FiberAction,
    TorusInvolution,
    fixed_subgroup,
    closed_form_dimension,
    predicted_census,
    torsion_point_census,
)

from oracles import brute_fixed_torsion_points

M = IntegerMatrix.from_rows
H = Fraction(1, 2)


def _finite_order_2x2():
    out = []
    for e in itertools.product(range(-2, 3), repeat=4):
        A = M([e[:2], e[2:]])
        if A.order(12) is not None:
            out.append(A)
    return out


FINITE = _finite_order_2x2()
INVOLUTIVE = [A for A in FINITE if (A @ A).is_identity()]


def test_examples():
    s = fixed_subgroup(TorusInvolution.make(-IntegerMatrix.identity(2)))
    assert (s.dim, s.components, s.unit) == (0, 4, "complex")
    s = fixed_subgroup(TorusInvolution.make(IntegerMatrix.identity(2), conj=True))
    assert (s.dim, s.components, s.unit) == (2, 4, "real")
    t = TorusInvolution.make([[1, 0], [0, -1]])
    s = fixed_subgroup(t)
    assert (s.dim, s.components, s.torus_dim) == (1, 2, 1)
    assert torsion_point_census(TorusInvolution.make(-IntegerMatrix.identity(2)), 2) == 4
    assert torsion_point_census(TorusInvolution.make(-IntegerMatrix.identity(2)), 3) == 1
    assert torsion_point_census(t, 4) == 8


def test_closed_form_dimension():
    assert closed_form_dimension(1, 2) == 1
    assert closed_form_dimension(1, 4) == 2
    assert closed_form_dimension(2, 4) == 1
    with pytest.raises(DomainError):
        closed_form_dimension(0, 2)


def test_empty_and_generic_shift():
    # theta -> theta + 1/2 has no fixed point
    t = TorusInvolution.make([[1]], shift=(H,))
    s = fixed_subgroup(t)
    assert s.nonempty is False and s.components == 0
    g = fixed_subgroup(TorusInvolution(M([[1, 0], [0, -1]]), False, None))
    assert g.nonempty is None and "c1" in g.constraint
    with pytest.raises(DomainError):
        torsion_point_census(TorusInvolution(M([[1]]), False, None), 2)


def test_rejects_bad_maps():
    with pytest.raises(DomainError):
        TorusInvolution.make([[1, 1], [0, 1]])
    with pytest.raises(DomainError):
        TorusInvolution.make([[1]], ambient="mixed")
    with pytest.raises(DomainError):
        TorusInvolution.make([[1]], shift=(0, 0))


def test_census_cap(monkeypatch):
    monkeypatch.setenv("BRANE_ATLAS_CENSUS_CAP", "10")
    with pytest.raises(DomainError):
        torsion_point_census(TorusInvolution.make(IntegerMatrix.identity(2)), 4)


def test_mixed_fiber():
    X = -IntegerMatrix.identity(2)
    t = TorusInvolution.make(X, ambient="mixed", fiber=FiberAction(M([[1]]), 1, False))
    s = fixed_subgroup(t)
    assert (s.dim, s.unit, s.components) == (1, "complex", 4)
    t = TorusInvolution.make(X, ambient="mixed", fiber=FiberAction(M([[1]]), -1, False))
    assert fixed_subgroup(t).dim == 0
    t = TorusInvolution.make(M([[1, 0], [0, -1]]), ambient="mixed", fiber=FiberAction(M([[1]]), -1, True))
    s = fixed_subgroup(t)
    assert (s.dim, s.unit) == (2, "real")
    bad = FiberAction(M([[1]]), 1, False, ((Fraction(1), Fraction(0)),))
    assert fixed_subgroup(TorusInvolution.make(X, ambient="mixed", fiber=bad)).nonempty is False


@st.composite
def affine_maps(draw):
    A = draw(st.sampled_from(FINITE))
    conj = draw(st.booleans())
    G = -A if conj else A
    den = draw(st.sampled_from([1, 2, 3, 4]))
    c = tuple(Fraction(draw(st.integers(0, den - 1)), den) for _ in range(2))
    return TorusInvolution.make(A, conj, c), G, c


@settings(max_examples=300, deadline=None)
@given(affine_maps(), st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12]))
def test_census_matches_brute_and_prediction(data, N):
    t, G, c = data
    count = torsion_point_census(t, N)
    assert count == len(brute_fixed_torsion_points(G.tolist(), c, N))
    assert count == predicted_census(t, N)
    s = fixed_subgroup(t)
    if all(N % d == 0 for d in s.torsion) and count:
        assert count == s.components * N**s.torus_dim
    if not s.nonempty:
        assert count == 0


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(INVOLUTIVE), st.booleans(), st.integers(0, 3), st.integers(0, 3))
def test_involution_has_small_order_point(A, conj, a, b):
    c = (Fraction(a, 4), Fraction(b, 4))
    G = -A if conj else A
    if any(x % 1 for x in (IntegerMatrix.identity(2) + G).apply(c)):
        return
    t = TorusInvolution.make(A, conj, c)
    assert t.is_involution
    s = fixed_subgroup(t)
    if s.nonempty:
        o = max(x.denominator for x in c)
        assert torsion_point_census(t, 2 * o) > 0


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(INVOLUTIVE))
def test_half_dimension(A):
    t = TorusInvolution.make(A, True)
    s = fixed_subgroup(t)
    assert s.nonempty and s.dim == t.n


@settings(max_examples=100, deadline=None)
@given(affine_maps(), st.sampled_from([2, 3, 4, 6]))
def test_fixed_points_fixed_by_square(data, N):
    t, G, c = data
    G2 = G @ G
    c2 = [x + y for x, y in zip(G.apply(c), c)]
    pts = brute_fixed_torsion_points(G.tolist(), c, N)
    for k in pts:
        x = [Fraction(v, N) for v in k]
        img = [a + b for a, b in zip(G2.apply(x), c2)]
        assert all((u - v) % 1 == 0 for u, v in zip(img, x))


def test_order():
    assert TorusInvolution.make(M([[0, -1], [1, 0]])).order() == 4
    assert TorusInvolution.make(IntegerMatrix.identity(1), True).order() == 2
    assert TorusInvolution.make(IntegerMatrix.identity(1), shift=(Fraction(1, 3),)).order() == 3
