import random

import hypothesis.strategies as st
import pytest
from hypothesis import given

from tens_semigroup.polyhedra import cone_p, union_member
from tens_semigroup.semigroup import (
    CriterionInapplicable,
    G2_GENERATORS,
    PHI0,
    PHI1,
    PHI2,
    Triple,
    VerificationReport,
    conjecture_scan,
    deep_member,
    deep_threshold,
    e2_member,
    e3_member,
    elementary_decomposition_c2,
    exceptional_sets_g2,
    g2_nongenerators_in_tens_identities,
    in_tens,
    lambda_member,
    sample_deep_triples,
    saturated_member,
    saturation_facts,
    tens_c2_criterion,
    tens_g2_criterion,
    verify_decomposition,
)

from .conftest import amb


def test_triple_text_and_trace(c2):
    t = Triple.of(c2, (1, 0), (0, 1), (2, 2))
    assert str(t) == "([1,0],[0,1],[2,2])"
    assert t.trace == (3, 3)
    assert Triple.coerce(c2, t.flat) == t


def test_lambda_examples(c2, g2):
    assert lambda_member(c2, amb(c2, (1, 1), (1, 1), (1, 1)))
    assert not lambda_member(c2, amb(c2, (1, 0), (0, 0), (0, 0)))
    assert all(lambda_member(g2, ((a, b), (1, 0), (0, 1))) for a in range(3) for b in range(3))


def test_mainbc_examples(c2):
    assert not tens_c2_criterion(amb(c2, (1, 1), (1, 1), (1, 1)))
    assert tens_c2_criterion(amb(c2, (1, 1), (1, 1), (2, 0)))
    assert tens_c2_criterion(amb(c2, (1, 0), (1, 0), (0, 0)))
    with pytest.raises(CriterionInapplicable):
        tens_c2_criterion(amb(c2, (1, 0), (0, 0), (0, 0)))


def test_elementary_sets(c2):
    E = elementary_decomposition_c2()
    assert len(E) == 6
    assert Triple.coerce(c2, amb(c2, (1, 1), (1, 1), (2, 0))).flat in E[0]
    assert Triple.coerce(c2, amb(c2, (1, 0), (1, 0), (0, 0))).flat in E[3]
    assert not union_member(E, Triple.coerce(c2, amb(c2, (1, 1), (1, 1), (1, 1))).flat)


def test_g2_generators(g2):
    assert G2_GENERATORS["delta5"] == ((0, 1), (0, 1), (3, 0))
    name, lhs, rhs, eq = g2_nongenerators_in_tens_identities()[0]
    assert eq and lhs == Triple((0, 2), (0, 2), (2, 1))
    cone = cone_p(g2)
    assert all(Triple(*v).flat in cone for v in G2_GENERATORS.values())


def test_g2_criterion_examples():
    assert not tens_g2_criterion(G2_GENERATORS["eps1"])
    assert not tens_g2_criterion(G2_GENERATORS["eps2"])
    assert tens_g2_criterion(G2_GENERATORS["delta4"])
    with pytest.raises(CriterionInapplicable):
        tens_g2_criterion(((3, 0), (0, 0), (0, 0)))


def test_exceptional_parametrisations():
    (e1, e2, e3), _ = exceptional_sets_g2()
    eps1, eps2 = (Triple(*G2_GENERATORS[k]) for k in ("eps1", "eps2"))
    assert eps1.flat in e1 and e2_member(0, 0) == eps1 and eps1.flat in e2
    assert eps2.flat in e1
    assert e3_member(0, 0) == eps2
    for n in range(4):
        for m in range(4):
            assert e2_member(n, m).flat in e2 and e3_member(n, m).flat in e3
            assert PHI0(e2_member(n, m).flat) == 1
            assert PHI1(e3_member(n, m).flat) == 1
            assert PHI2(e3_member(n, m).flat) == 2 + 3 * m
    assert PHI0(eps1.flat) == 1


def test_exceptional_sets_outside_tens(g2):
    (e1, e2, e3), _ = exceptional_sets_g2()
    for n in range(3):
        for m in range(2):
            assert not in_tens(g2, e2_member(n, m))
            assert not in_tens(g2, e3_member(n, m))


def test_saturation(c2):
    assert saturation_facts(c2) == (2, 2)
    sigma = amb(c2, (1, 1), (1, 1), (1, 1))
    assert not in_tens(c2, sigma)
    assert saturated_member(c2, sigma, "B2")
    assert saturated_member(c2, sigma, "kR2")
    assert saturated_member(c2, ((1, 0), (1, 0), (0, 0)), "kRkw")
    with pytest.raises(CriterionInapplicable):
        saturated_member(c2, ((1, 0), (0, 0), (0, 0)), "kR2")


def test_deep_threshold_values():
    assert deep_threshold(2) == 324
    assert deep_threshold(3) == 1242
    with pytest.raises(ValueError):
        deep_threshold(1)


def test_deep_sampling_is_seeded():
    a = sample_deep_triples(20, seed=3)
    assert a == sample_deep_triples(20, seed=3)
    assert all(deep_member(t) for t in a)
    assert not deep_member(((2, 0), (2, 0), (0, 0)))


def test_report_json():
    rep = VerificationReport("mainBC", 2, scanned=3, mismatches=[Triple((0, 1), (0, 1), (0, 1))])
    data = rep.to_json(timing=False)
    assert data["mismatches"] == [[[0, 1], [0, 1], [0, 1]]] and "seconds" not in data
    assert not rep.passed


def test_a2_decomposition_small():
    rep = verify_decomposition("A2", 3)
    assert rep.passed, rep.to_json()


def test_conjecture_examples():
    assert conjecture_scan("C1.1", "A2", 4).passed
    assert conjecture_scan("C1.2", "C2", 5).passed
    assert conjecture_scan("C1.2", "G2", 3).passed
    vac = conjecture_scan("C1.3", "C2", 2)
    assert vac.details.get("vacuous")
    k2 = conjecture_scan("Kumar2", "C2", 2)
    assert k2.passed and k2.details["singular_non_members"] > 0


def test_c11_fails_off_simply_laced():
    rep = conjecture_scan("C1.1", "C2", 2)
    # (varpi_2, varpi_2, varpi_2) is in the cone with trace in Q and not in Tens
    assert Triple((0, 1), (0, 1), (0, 1)) in rep.mismatches


c2w = st.tuples(st.integers(0, 4), st.integers(0, 4))


@given(c2w, c2w, c2w, c2w, c2w, c2w)
def test_closure_under_addition(a, b, c, d, e, f):
    s, t = Triple(a, b, c), Triple(d, e, f)
    if in_tens("C2", s) and in_tens("C2", t):
        assert in_tens("C2", Triple(*(tuple(x + y for x, y in zip(u, v)) for u, v in zip(s, t))))


@given(c2w, c2w, c2w)
def test_criterion_agrees_with_oracle(a, b, c):
    t = Triple(a, b, c)
    try:
        verdict = tens_c2_criterion(t)
    except CriterionInapplicable:
        assert not in_tens("C2", t)
        return
    assert verdict == in_tens("C2", t)


def test_seeded_random_positive_pairs():
    rng = random.Random(7)
    found = 0
    while found < 40:
        s, t = (Triple(*((rng.randint(0, 3), rng.randint(0, 3)) for _ in range(3))) for _ in range(2))
        if in_tens("G2", s) and in_tens("G2", t):
            found += 1
            assert in_tens("G2", Triple(*(tuple(x + y for x, y in zip(u, v)) for u, v in zip(s, t))))
