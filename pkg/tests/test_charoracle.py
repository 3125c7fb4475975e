import hypothesis.strategies as st
import pytest
from hypothesis import given

from tens_semigroup import charoracle
from tens_semigroup.charoracle import (
    ResourceCapExceeded,
    all_weights,
    decomposition_dimension,
    product_dimension,
    tensor_decompose,
    triple_invariant_dim,
    weight_multiplicities,
    weyl_dim,
)
from tens_semigroup.rootsys import build_root_system, contragredient_fund

from .conftest import amb


def test_dominant_multiplicities(c2):
    (mu,) = amb(c2, (1, 1))
    t = weight_multiplicities(c2, mu)
    assert {c2.fund(*k).coords: v for k, v in t.dominant.items()} == {(1, 1): 1, (0, 0): 1}
    assert t.dimension(c2) == 5
    (mu,) = amb(c2, (2, 0))
    t = weight_multiplicities(c2, mu)
    assert {c2.fund(*k).coords: v for k, v in t.dominant.items()} == {(2, 0): 1, (1, 1): 1, (0, 0): 2}
    assert t.dimension(c2) == 10
    assert weight_multiplicities(c2, (0, 0)).dominant == {(0, 0): 1}


def test_weyl_dimensions(c2, g2):
    assert weyl_dim(c2, (0, 0)) == 1
    assert weyl_dim(c2, (1, 0)) == 4 and weyl_dim(c2, (0, 1)) == 5
    assert weyl_dim(g2, (1, 0)) == 7 and weyl_dim(g2, (0, 1)) == 14


def _amb_table(rs, table):
    return {rs.fund(*k).coords: v for k, v in table.items()}


def test_tensor_examples(c2):
    w1, w2 = amb(c2, (1, 0), (1, 1))
    assert _amb_table(c2, tensor_decompose(c2, w1, w1)) == {(2, 0): 1, (1, 1): 1, (0, 0): 1}
    assert _amb_table(c2, tensor_decompose(c2, w2, w2)) == {(2, 2): 1, (2, 0): 1, (0, 0): 1}
    assert tensor_decompose(c2, (2, 1), (0, 0)) == {(2, 1): 1}


def test_invariant_dims(c2, g2):
    assert triple_invariant_dim(c2, (1, 0), (1, 0), (0, 0)) == 1
    assert triple_invariant_dim(g2, (0, 1), (0, 1), (1, 0)) == 0
    assert triple_invariant_dim(c2, (0, 0), (0, 0), (0, 0)) == 1


def test_caps_and_errors(c2):
    with pytest.raises(ResourceCapExceeded):
        weight_multiplicities(c2, (charoracle.MAX_COORD + 1, 0))
    with pytest.raises(ValueError):
        weyl_dim(c2, (-1, 0))
    with pytest.raises(ValueError):
        tensor_decompose(c2, (1,), (1, 0))


def test_disk_cache_roundtrip(tmp_path, monkeypatch, c2):
    monkeypatch.setenv("TSL_CACHE_DIR", str(tmp_path))
    charoracle.clear_caches()
    first = weight_multiplicities(c2, (3, 2)).dominant
    assert list(tmp_path.iterdir())
    charoracle.clear_caches()
    assert weight_multiplicities(c2, (3, 2)).dominant == first
    charoracle.clear_caches()


dom = st.tuples(st.integers(0, 4), st.integers(0, 4))
systems = st.sampled_from(["A2", "C2", "G2"])


@given(systems, dom)
def test_table_sum_is_weyl_dimension(name, lam):
    rs = build_root_system(name)
    assert sum(all_weights(rs, lam).values()) == weyl_dim(rs, lam)


@given(systems, dom, dom)
def test_tensor_dimension_balances(name, lam, mu):
    rs = build_root_system(name)
    if name == "G2" and sum(lam) + sum(mu) > 6:
        lam, mu = (min(lam[0], 2), min(lam[1], 1)), (min(mu[0], 2), min(mu[1], 1))
    assert decomposition_dimension(rs, tensor_decompose(rs, lam, mu)) == product_dimension(rs, lam, mu)


@given(systems, dom, dom, dom)
def test_invariants_symmetric_and_self_dual(name, lam, mu, nu):
    rs = build_root_system(name)
    if name == "G2":
        lam, mu, nu = (tuple(min(c, 2) for c in v) for v in (lam, mu, nu))
    d = triple_invariant_dim(rs, lam, mu, nu)
    assert d == triple_invariant_dim(rs, mu, nu, lam) == triple_invariant_dim(rs, nu, mu, lam)
    dual = [contragredient_fund(rs, v) for v in (lam, mu, nu)]
    assert d == triple_invariant_dim(rs, *dual)
