from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from tens_semigroup.rootsys import (
    RootSystemError,
    build_root_system,
    contragredient,
    contragredient_fund,
    dominate,
    dominate_fund,
    is_dominant,
    is_dominant_fund,
    lattice_member,
    pair,
    parse_frac_list,
    weyl_act,
    weyl_orbit,
)


def test_c2_fundamental_weights(c2):
    assert [w.coords for w in c2.fundamental_weights] == [(1, 0), (1, 1)]
    assert len(c2.weyl_group) == 8


def test_a1_and_g2_shapes(g2):
    a1 = build_root_system("A1")
    assert a1.rank == 1 and len(a1.weyl_group) == 2
    assert len(g2.weyl_group) == 12
    w1, w2 = g2.fundamental_weights
    assert g2.inner_fund((0, 1), (0, 1)) > g2.inner_fund((1, 0), (1, 0))


def test_cartan_matrix_input_matches_builtin():
    rs = build_root_system([[2, -1], [-1, 2]])
    assert len(rs.weyl_group) == 6
    with pytest.raises(RootSystemError):
        build_root_system([[2, -2], [-2, 2]])  # affine, not finite type
    with pytest.raises(RootSystemError):
        build_root_system("E9")


def test_coroot_pairing(c2):
    a1, a2 = c2.simple_coroots
    wt = c2.weight(1, 1)
    assert pair(c2, a2, wt) == 1
    assert pair(c2, a1, wt) == 0
    # alpha_1 check is x - y, alpha_2 check is y
    assert pair(c2, a1, c2.weight(5, 2)) == 3
    assert pair(c2, a2, c2.weight(5, 2)) == 2
    for c in c2.positive_coroots:
        assert pair(c2, c, c2.zero()) == 0


def test_dominate_examples(c2):
    u, w = dominate(c2, c2.weight(0, 1))
    assert u.coords == (1, 0)
    assert weyl_act(c2, w, c2.weight(1, 0)).coords == (0, 1)  # the swap is an involution
    u, w = dominate(c2, c2.weight(1, 1))
    assert u.coords == (1, 1) and w.length == 0
    u, _ = dominate(c2, c2.weight(-1, -1))
    assert u.coords == (1, 1)


def test_contragredient(c2, a2):
    assert contragredient(c2, c2.weight(2, 1)).coords == (2, 1)
    assert contragredient_fund(a2, (1, 0)) == (0, 1)
    for rs in (c2, a2):
        assert contragredient_fund(rs, (0, 0)) == (0, 0)


def test_lattices(c2, g2):
    assert lattice_member(c2, c2.weight(1, 1), "root")
    assert not lattice_member(c2, c2.weight(1, 0), "root")
    assert lattice_member(c2, c2.weight(1, 0), "weight")
    assert not lattice_member(c2, c2.weight(Fraction(1, 2), 0), "weight")
    for x in [(1, 0), (0, 1), (3, 5)]:
        assert lattice_member(g2, x, "root")


def test_orbits(c2):
    assert {w.coords for w in weyl_orbit(c2, c2.weight(1, 0))} == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert {w.coords for w in weyl_orbit(c2, c2.weight(1, 1))} == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert {w.coords for w in weyl_orbit(c2, c2.zero())} == {(0, 0)}


def test_parse_fractions():
    assert parse_frac_list("1/2, -3") == (Fraction(1, 2), Fraction(-3))
    with pytest.raises(ValueError):
        parse_frac_list("a,b")


vecs = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


@given(vecs, st.sampled_from(["A2", "C2", "G2"]))
def test_dominate_lands_in_chamber_and_orbit(x, name):
    rs = build_root_system(name)
    u, _ = dominate_fund(rs, x)
    assert is_dominant_fund(u)
    assert tuple(u) in {tuple(w.act_fund(x)) for w in rs.weyl_group}


@given(vecs, st.sampled_from(["A2", "C2", "G2"]))
def test_weyl_action_preserves_norm(x, name):
    rs = build_root_system(name)
    n = rs.inner_fund(x, x)
    assert all(rs.inner_fund(w.act_fund(x), w.act_fund(x)) == n for w in rs.weyl_group)


@given(vecs)
def test_contragredient_is_involution(x):
    for name in ("A2", "C2", "G2"):
        rs = build_root_system(name)
        assert contragredient_fund(rs, contragredient_fund(rs, x)) == tuple(x)


def test_is_dominant_on_weights(c2):
    assert is_dominant(c2, c2.weight(2, 1))
    assert not is_dominant(c2, c2.weight(1, 2))
