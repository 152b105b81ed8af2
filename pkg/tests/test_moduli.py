from fractions import Fraction

import pytest

from brane_atlas.errors import DomainError
from brane_atlas.lattice import IntegerMatrix
from brane_atlas.moduli import (
    Twist,
    build_twisted_involution,
    fixed_locus_decomposition,
    pseudo_real_moduli,
    sigma_fixed_two_torsion,
)
from brane_atlas.torusfix import fixed_subgroup, torsion_point_census
from brane_atlas.weyl import twisted_classes

from helpers import query, sweep_queries

H = Fraction(1, 2)


def test_cstar_rep_map():
    q = query("GL1", "compact", "H:-1", "+")
    t = build_twisted_involution(q, 0, "representation")
    assert t.M == -IntegerMatrix.identity(2) and not t.conj


def test_sl2_reflection_gives_identity():
    q = query("A1", "compact", "H:-1", "+")
    s = q.weyl.generators[0]
    t = build_twisted_involution(q, s, "representation")
    assert t.M.is_identity()
    assert fixed_subgroup(t).dim == 2


def test_a1xa1_swap_rank4():
    q = query("A1xA1", "swap", "A:1", "-")
    t = build_twisted_involution(q, 0, "representation")
    assert t.M.shape == (4, 4) and t.conj and t.is_involution


def test_cstar_higgs_example():
    r = fixed_locus_decomposition(query("GL1", "compact", "H:-1", "+"))
    [c] = r.components
    assert (c.dim, c.unit, c.pi0) == (1, "complex", 4)
    assert c.brane == "(B,B,B)"
    r = fixed_locus_decomposition(query("GL1", "compact", "H:-1", "-"))
    [c] = r.components
    assert (c.dim, c.pi0, c.brane) == (0, 4, "(B,A,A)")


def test_sl2_split_region_a():
    q = query("A1", "split", "A:1", "-")
    r = fixed_locus_decomposition(q)
    assert r.class_count == 2
    assert [c.class_id for c in r.components] == [0, 1]
    assert all(c.maximal for c in r.components)
    for c in r.components:
        t = build_twisted_involution(q, c.omega, "representation")
        s = fixed_subgroup(t)
        assert torsion_point_census(t, 4) == s.components * 4**s.torus_dim


def test_sigma_id_ordinary_classes():
    for g in ("A2", "B2", "G2"):
        q = query(g, "compact", "H:1", "+")
        assert fixed_locus_decomposition(q).class_count == len(set(q.weyl.conjugacy_labels))


def test_epsilon_mismatch():
    from brane_atlas.involutions import resolve_sigma
    from brane_atlas.elliptic import parse_curve
    from brane_atlas.moduli import InvolutionQuery
    from brane_atlas.rootdatum import build_datum

    d = build_datum("A1")
    with pytest.raises(DomainError):
        InvolutionQuery(d, resolve_sigma(d, "compact", "+"), parse_curve("A:1"), "+")


def test_twist_validation():
    with pytest.raises(DomainError):
        query("A1", "compact", "H:-1", "+", Twist(((H, 0),), None))
    q = query("GL1", "compact", "H:1", "-", Twist(((H, 0),), None))
    assert not q.twist.is_trivial
    with pytest.raises(DomainError):
        query("GL1", "compact", "H:1", "+", Twist(((Fraction(1, 3), 0),), None))
    r = fixed_locus_decomposition(query("GL1", "compact", "H:1", "+", Twist.generic()))
    assert r.components[0].nonempty is None


def _queries():
    return list(sweep_queries(groups=["A1", "A2", "B2", "A1xA1", "GL2", "G2"]))


@pytest.mark.parametrize("side", ["representation", "higgs"])
def test_class_independence_and_involutivity(side):
    for q in _queries():
        W, sig = q.weyl, q.sig
        for c in twisted_classes(W, sig):
            ref = None
            for w in c.members:
                t = build_twisted_involution(q, w, side)
                if W.multiply(w, sig[w]) == 0:
                    assert t.is_involution
                s = fixed_subgroup(t)
                key = (s.dim, s.components, s.nonempty)
                assert ref is None or key == ref, (q.echo, c.id, w)
                ref = key


def test_orbit_stabilizer_on_components():
    for q in _queries():
        r = fixed_locus_decomposition(q, orbits=False)
        for c in r.components:
            assert c.class_size * c.normalizer_order == r.weyl_order


def test_pseudo_real_sl2():
    q = query("A1.sc", "split", "A:-1", "-")
    zs = sigma_fixed_two_torsion(q)
    assert [str(z) for z in zs] == ["(0)", "(1/2)"]
    zero = pseudo_real_moduli(q, zs[0])
    assert zero.omega_z == 0 and set(zero.class_ids) == {0, 1}
    nz = pseudo_real_moduli(q, zs[1])
    assert nz.empty and "no w" in nz.diagnostics
    with pytest.raises(DomainError):
        pseudo_real_moduli(query("A1", "compact", "H:1", "+"), zs[0])
