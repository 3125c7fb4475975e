"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` or ``python -m tests.test_acceptance``.
"""
import itertools
import random
import sys
import time

import pytest

from tens_semigroup import charoracle
from tens_semigroup.pathmodel import crystal, path_tensor_decomposition
from tens_semigroup.polyhedra import (
    ElementarySet,
    conic_hull_facets,
    es_member,
    es_project_last,
    flatten,
    union_member,
)
from tens_semigroup.rootsys import build_root_system, contragredient_fund
from tens_semigroup.semigroup import (
    PHI0,
    Triple,
    compute_tens_decomposition,
    deep_threshold,
    g2_generator_orbits,
    in_tens,
    phi_report,
    verify_decomposition,
    verify_deep,
    verify_esets,
    verify_g2,
    verify_kumar,
    verify_mainbc,
    verify_saturation,
)

RESULTS = {}


def report(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = (ok, line)
    print(line)
    assert ok, line


def test_criterion_01_path_model_matches_oracle():
    rs = build_root_system("C2")
    t0 = time.time()
    rng = list(itertools.product(range(6), repeat=2))
    bad = checked = 0
    for lam in rng:
        for mu in rng:
            paths = path_tensor_decomposition(rs, lam, mu)
            klimyk = charoracle.tensor_decompose(rs, lam, mu)
            for nu in rng:
                dual = contragredient_fund(rs, nu)
                checked += 1
                bad += paths.get(dual, 0) != klimyk.get(dual, 0)
    dt = time.time() - t0
    report(1, bad == 0 and dt < 300, f"{checked} triples, {bad} mismatches, {dt:.1f}s (limit 300s)")


def test_criterion_02_mainbc():
    t0 = time.time()
    rep = verify_mainbc(6)
    dt = time.time() - t0
    report(2, rep.passed and dt < 600, f"{rep.scanned} triples in P(G) x Lambda, {len(rep.mismatches)} mismatches, {dt:.1f}s (limit 600s)")


def test_criterion_03_elementary_sets():
    rep = verify_esets(6)
    report(3, rep.passed, f"{rep.scanned} box points, {len(rep.mismatches)} mismatches against oracle and criterion")


def test_criterion_04_g2():
    rep = verify_g2(3)
    non = rep.details["non_members_among_generators"]
    idents = all(d["holds"] and d["in_tens"] for d in rep.details["identities"])
    ok = rep.passed and non == ["eps1", "eps2"] and idents
    report(4, ok, f"{rep.scanned} triples, {len(rep.mismatches)} mismatches; non-member generators {non}; identities hold: {idents}")


def test_criterion_05_b2_saturation():
    rep = verify_saturation(4)
    report(5, rep.passed, f"{rep.scanned} triples, oracle(2 sigma) > 0 failed for {len(rep.mismatches)}")


def test_criterion_06_kumar():
    rep = verify_kumar(6)
    report(6, rep.passed, f"{rep.scanned} C^(1,2) members, {len(rep.mismatches)} with zero invariants")


def test_criterion_07_deep_subcone():
    t0 = time.time()
    rep = verify_deep(10_000, seed=0)
    dt = time.time() - t0
    ok = deep_threshold(2) == 324 and rep.passed and rep.scanned == 10_000 and dt < 60
    report(7, ok, f"threshold {deep_threshold(2)}, {rep.scanned} samples, {len(rep.mismatches)} failures, {dt:.1f}s (limit 60s)")


def test_criterion_08_decomposition_pipeline():
    c2 = verify_decomposition("C2", 6, compute_tens_decomposition("C2"))
    a2 = verify_decomposition("A2", 5, compute_tens_decomposition("A2"))
    ok = c2.passed and a2.passed
    report(8, ok, f"C2 box 6: {len(c2.mismatches)} mismatches ({c2.details['sets']} sets); "
                  f"A2 box 5: {len(a2.mismatches)} mismatches ({a2.details['sets']} sets)")


def _positive_multiple(a, b):
    pairs = [(x, y) for x, y in zip(a, b)]
    if any((x == 0) != (y == 0) for x, y in pairs):
        return False
    r = {x / y for x, y in pairs if y}
    return len(r) == 1 and r.pop() > 0


def test_criterion_09_g2_facets():
    facets = conic_hull_facets([flatten(s) for s in g2_generator_orbits()])
    has_phi0 = any(_positive_multiple(f.coeffs, PHI0.coeffs) for f in facets)
    phi = phi_report()
    ok = has_phi0 and phi["phi0_on_E2_all_one"]
    report(9, ok, f"{len(facets)} facets, phi0 present: {has_phi0}; phi0 = 1 on E2: {phi['phi0_on_E2_all_one']}; "
                  f"phi1 = 1 on E3: {phi['phi1_on_E3_all_one']}; phi2 on E3 takes {phi['phi2_on_E3_values']} "
                  f"(= 2+3m: {phi['phi2_on_E3_matches_formula']}, reported only)")


def _random_set(rng, dim):
    e = tuple(int(i == dim - 1) for i in range(dim))
    rows = [(e, -4), (tuple(-c for c in e), -4)]
    for _ in range(rng.randint(1, 3)):
        rows.append((tuple(rng.randint(-3, 3) for _ in range(dim)), rng.randint(-4, 4)))
    congs = []
    if rng.random() < 0.5:
        congs.append((tuple(rng.randint(-3, 3) for _ in range(dim)), rng.randint(2, 4), rng.randint(0, 3)))
    return ElementarySet.build(dim, rows, congs)


def test_criterion_10_structural_suite():
    fails = []
    for name in ("C2", "G2"):
        rs = build_root_system(name)
        for comps in itertools.product(range(5), repeat=2):
            if len(crystal(rs, comps)) != charoracle.weyl_dim(rs, comps):
                fails.append(("crystal", name, comps))
    for name, box in (("C2", 3), ("G2", 2), ("A2", 3)):
        rs = build_root_system(name)
        ws = list(itertools.product(range(box + 1), repeat=2))
        for lam, mu, nu in itertools.product(ws, repeat=3):
            d = charoracle.triple_invariant_dim(rs, lam, mu, nu)
            for p in itertools.permutations((lam, mu, nu)):
                if charoracle.triple_invariant_dim(rs, *p) != d:
                    fails.append(("s3", name, lam, mu, nu))
            dual = [contragredient_fund(rs, v) for v in (lam, mu, nu)]
            if charoracle.triple_invariant_dim(rs, *dual) != d:
                fails.append(("duality", name, lam, mu, nu))
    rng = random.Random(2024)
    pairs = 0
    while pairs < 1000:
        s, t = (Triple(*((rng.randint(0, 3), rng.randint(0, 3)) for _ in range(3))) for _ in range(2))
        if in_tens("C2", s) and in_tens("C2", t):
            pairs += 1
            if not in_tens("C2", Triple(*(tuple(x + y for x, y in zip(u, v)) for u, v in zip(s, t)))):
                fails.append(("closure", s, t))
    rng = random.Random(99)
    for k in range(1000):
        dim = 2 if k % 2 == 0 else 3
        E = _random_set(rng, dim)
        pieces = es_project_last(E)
        for x in itertools.product(range(-5, 6), repeat=dim - 1):
            brute = any(es_member(E, x + (a,)) for a in range(-4, 5))
            if union_member(pieces, x) != brute:
                fails.append(("projection", k, x))
                break
    report(10, not fails, f"crystals, S3/duality, 1000 closure pairs, 1000 projections: {len(fails)} failures {fails[:3]}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
