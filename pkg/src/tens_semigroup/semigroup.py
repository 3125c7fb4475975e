"""Membership criteria for Tens(G), elementary-set decompositions and
box verifications against the character oracle.

Triples are stored in fundamental coordinates.  For C2 that means
lambda = a varpi_1 + b varpi_2 is the pair (a, b); the orthonormal picture
(x, y) = (a + b, b) is only used for documentation and the CLI.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

from . import charoracle
from .polyhedra import (
    ElementarySet,
    LinearFunctional,
    cone_p,
    c12_member,
    conic_hull_facets,
    flatten,
    project_onto_first,
    s3_orbit,
    union_member,
)
from .rootsys import (
    build_root_system,
    contragredient_fund,
    in_root_lattice_fund,
    is_dominant_fund,
)


class CriterionInapplicable(ValueError):
    """The triple lies outside the hypotheses of the theorem being applied."""


# ---------------------------------------------------------------------------
# triples and reports


@dataclass(frozen=True)
class Triple:
    lam: tuple
    mu: tuple
    nu: tuple

    @classmethod
    def of(cls, rs, lam, mu, nu):
        rs = build_root_system(rs)
        parts = []
        for v in (lam, mu, nu):
            f = rs.fund_of(v)
            parts.append(tuple(int(c) if c.denominator == 1 else c for c in f))
        return cls(*parts)

    @classmethod
    def coerce(cls, rs, sigma):
        if isinstance(sigma, Triple):
            return sigma
        if len(sigma) == 3:
            return cls.of(rs, *sigma)
        k = len(sigma) // 3
        return cls.of(rs, sigma[:k], sigma[k:2 * k], sigma[2 * k:])

    def __iter__(self):
        return iter((self.lam, self.mu, self.nu))

    @property
    def trace(self):
        return tuple(a + b + c for a, b, c in zip(self.lam, self.mu, self.nu))

    @property
    def flat(self):
        return tuple(self.lam) + tuple(self.mu) + tuple(self.nu)

    def scaled(self, k):
        return Triple(*(tuple(k * c for c in v) for v in self))

    def to_list(self):
        return [[int(c) if Fraction(c).denominator == 1 else str(c) for c in v] for v in self]

    def __str__(self):
        return "(" + ",".join("[" + ",".join(str(c) for c in v) + "]" for v in self) + ")"


@dataclass
class VerificationReport:
    theorem: str
    box: int
    scanned: int = 0
    mismatches: list = field(default_factory=list)
    seconds: float = 0.0
    system: str = ""
    details: dict = field(default_factory=dict)
    partial: bool = False

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.partial

    def to_json(self, timing=True) -> dict:
        out = {
            "theorem": self.theorem,
            "box": self.box,
            "scanned": self.scanned,
            "mismatches": [t.to_list() if isinstance(t, Triple) else t for t in sorted(self.mismatches, key=_sort_key)],
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        if self.system:
            out["system"] = self.system
        if self.details:
            out["details"] = self.details
        if self.partial:
            out["partial"] = True
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _sort_key(t):
    return t.to_list() if isinstance(t, Triple) else t


# ---------------------------------------------------------------------------
# basic predicates


def lambda_member(rs, sigma) -> bool:
    """trace(sigma) in Q(R)."""
    rs = build_root_system(rs)
    t = Triple.coerce(rs, sigma)
    tr = t.trace
    if any(Fraction(c).denominator != 1 for c in tr):
        return False
    return in_root_lattice_fund(rs, tuple(int(c) for c in tr))


def _integral_dominant(t: Triple) -> bool:
    return all(Fraction(c).denominator == 1 and c >= 0 for v in t for c in v)


def oracle_dim(rs, sigma) -> int:
    rs = build_root_system(rs)
    t = Triple.coerce(rs, sigma)
    return charoracle.triple_invariant_dim(rs, t.lam, t.mu, t.nu)


def in_tens(rs, sigma) -> bool:
    return oracle_dim(rs, sigma) > 0


def in_cone(rs, sigma) -> bool:
    rs = build_root_system(rs)
    return Triple.coerce(rs, sigma).flat in cone_p(rs)


# ---------------------------------------------------------------------------
# C2


def _is_varpi2_multiple(v) -> bool:
    # Z_+ varpi_2, zero included
    return v[0] == 0


def tens_c2_criterion(sigma) -> bool:
    """Membership in Tens(Sp(4)) for sigma in P(G) with trace in Q(R)."""
    rs = build_root_system("C2")
    t = Triple.coerce(rs, sigma)
    if not _integral_dominant(t) or t.flat not in cone_p(rs) or not lambda_member(rs, t):
        raise CriterionInapplicable(f"{t} is outside P(G) x Lambda")
    two = sum(_is_varpi2_multiple(v) for v in t) >= 2
    even = all(c % 2 == 0 for c in t.trace)
    return not (two and not even)


def _c2_block(i):
    """Coefficient row selecting a coordinate of weight i (0-based), fundamental coords."""
    def row(coord):
        r = [0] * 6
        r[2 * i + coord] = 1
        return tuple(r)
    return row


_ESETS_C2: list = []


def elementary_decomposition_c2() -> list[ElementarySet]:
    """E_1, E_2, E_3 (two weights in Z_+ varpi_2, trace in 2P) and
    E'_1, E'_2, E'_3 (two weights off Z_+ varpi_2, trace in Q), each cut by P(G)."""
    if _ESETS_C2:
        return list(_ESETS_C2)
    cone = cone_p("C2").as_elementary_set()
    pairs = [(0, 1), (0, 2), (2, 1)]
    trace_a = (1, 0, 1, 0, 1, 0)
    trace_b = (0, 1, 0, 1, 0, 1)
    sets = []
    for i, j in pairs:
        eqs = [(_c2_block(i)(0), 0), (_c2_block(j)(0), 0)]
        congs = [(trace_a, 2, 0), (trace_b, 2, 0)]
        sets.append(ElementarySet.build(6, cone.inequalities, congs, equalities=eqs))
    for i, j in pairs:
        ineqs = list(cone.inequalities) + [(_c2_block(i)(0), 1), (_c2_block(j)(0), 1)]
        sets.append(ElementarySet.build(6, ineqs, [(trace_a, 2, 0)]))
    _ESETS_C2.extend(sets)
    return sets


# ---------------------------------------------------------------------------
# G2


G2_GENERATORS = {
    "delta1": ((1, 0), (1, 0), (0, 0)),
    "delta2": ((0, 1), (0, 1), (0, 0)),
    "delta3": ((1, 0), (1, 0), (1, 0)),
    "delta4": ((0, 1), (0, 1), (0, 1)),
    "delta5": ((0, 1), (0, 1), (3, 0)),
    "delta6": ((0, 1), (0, 2), (3, 0)),
    "delta7": ((0, 1), (1, 0), (1, 0)),
    "delta8": ((0, 1), (1, 0), (2, 0)),
    "delta9": ((0, 1), (0, 1), (2, 0)),
    "eps1": ((0, 1), (0, 1), (1, 0)),
    "eps2": ((0, 1), (0, 1), (1, 1)),
}


def g2_generators() -> list[Triple]:
    return [Triple(*v) for v in G2_GENERATORS.values()]


def g2_generator_orbits() -> list[tuple]:
    out = set()
    for v in G2_GENERATORS.values():
        out.update(s3_orbit(v))
    return sorted(out)


def _add(*triples):
    return Triple(*(tuple(sum(c) for c in zip(*parts)) for parts in zip(*triples)))


def g2_nongenerators_in_tens_identities():
    """Sums of base triples with their componentwise evaluations."""
    g = {k: Triple(*v) for k, v in G2_GENERATORS.items()}
    out = []
    lhs = _add(g["eps1"], g["eps2"])
    rhs = _add(g["delta4"], g["delta9"])
    out.append(("eps1+eps2 = delta4+delta9", lhs, rhs, lhs == rhs))
    for k in ("eps1", "eps2"):
        t = g[k].scaled(2)
        out.append((f"2*{k}", t, t, True))
    return out


def _g2_row(**kw):
    names = ["x1", "y1", "x2", "y2", "x3", "y3"]
    return tuple(kw.get(n, 0) for n in names)


def _phi(coeffs, label):
    return LinearFunctional(_g2_row(**coeffs), label)


PHI0 = _phi(dict(x1=2, x2=-1, x3=1, y1=3, y2=-3, y3=3), "phi0")
PHI1 = _phi(dict(x1=1, x2=1, x3=-1, y1=1, y2=2, y3=-1), "phi1")
PHI2 = _phi(dict(x1=1, x2=1, x3=-1, y1=3, y2=3, y3=-3), "phi2")


def exceptional_sets_g2():
    """E_1, E_2, E_3 with the parameters eliminated, and (phi0, phi1, phi2)."""
    R = _g2_row
    nonneg = [(R(y1=1), 0), (R(y2=1), 0), (R(y3=1), 0)]
    zero12 = [(R(x1=1), 0), (R(x2=1), 0)]
    # ([0,y1],[0,y2],[1,y3])
    e1 = ElementarySet.build(6, nonneg, equalities=zero12 + [(R(x3=1), 1)])
    # ([0,1+n+m],[0,1+n+2m],[1+3m,0]): m = y2 - y1, n = y1 - 1 - m
    e2 = ElementarySet.build(
        6,
        [(R(y2=1, y1=-1), 0), (R(y1=2, y2=-1), 1)],
        equalities=zero12 + [(R(y3=1), 0), (R(x3=1, y2=-3, y1=3), 1)],
    )
    # ([0,1+n+m],[0,1+m],[1+3m,1+n]): m = y2 - 1, n = y3 - 1
    e3 = ElementarySet.build(
        6,
        [(R(y2=1), 1), (R(y3=1), 1)],
        equalities=zero12 + [(R(x3=1, y2=-3), -2), (R(y1=1, y2=-1, y3=-1), -1)],
    )
    return (e1, e2, e3), (PHI0, PHI1, PHI2)


def e2_member(n, m) -> Triple:
    return Triple((0, 1 + n + m), (0, 1 + n + 2 * m), (1 + 3 * m, 0))


def e3_member(n, m) -> Triple:
    return Triple((0, 1 + n + m), (0, 1 + m), (1 + 3 * m, 1 + n))


def _g2_exceptional(t: Triple) -> bool:
    sets, _ = exceptional_sets_g2()
    for perm in itertools.permutations(t):
        x = tuple(c for v in perm for c in v)
        if union_member(sets, x):
            return True
    return False


def tens_g2_criterion(sigma) -> bool:
    rs = build_root_system("G2")
    t = Triple.coerce(rs, sigma)
    if not _integral_dominant(t) or t.flat not in cone_p(rs):
        raise CriterionInapplicable(f"{t} is outside P(G) cap L^3")
    return not _g2_exceptional(t)


def phi_report(box=4) -> dict:
    """phi0 on E_2 and phi1/phi2 on E_3 over parameters n, m <= box."""
    e2 = [(n, m, PHI0(e2_member(n, m).flat)) for n in range(box + 1) for m in range(box + 1)]
    e3 = [(n, m, PHI1(e3_member(n, m).flat), PHI2(e3_member(n, m).flat)) for n in range(box + 1) for m in range(box + 1)]
    return {
        "phi0_on_E2_all_one": all(v == 1 for _, _, v in e2),
        "phi1_on_E3_all_one": all(v == 1 for _, _, v, _ in e3),
        "phi2_on_E3_all_one": all(v == 1 for _, _, _, v in e3),
        "phi2_on_E3_values": sorted({v for _, _, _, v in e3}),
        "phi2_on_E3_formula": "2+3m",
        "phi2_on_E3_matches_formula": all(v == 2 + 3 * m for _, m, _, v in e3),
    }


# ---------------------------------------------------------------------------
# saturation


def _invariant_factors(m):
    """Nonzero invariant factors of an integer matrix, via determinantal divisors."""
    rows, cols = len(m), len(m[0])
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                sub = [[Fraction(m[r][c]) for c in ci] for r in ri]
                g = gcd(g, abs(int(_det_frac(sub))))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def _det_frac(a):
    a = [row[:] for row in a]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


def saturation_facts(rs):
    """(k_R, k_w).

    k_R: the vertices of the affine complex are W_aff-images of
    varpi_i / c_i, where c_i are the coefficients of the highest coroot, so
    k_R = lcm(c_i).  k_w: for w in W, a w-invariant face has its barycenter
    in the fixed set of some x -> w x + t; the least k putting all such
    points in P(R) is the exponent of (P cap (1-w)V) / (1-w)P, i.e. the
    largest invariant factor of 1 - w.  k_w is the lcm over W.
    """
    rs = build_root_system(rs)
    k_r = reduce(lcm, rs.highest_coroot.coeffs, 1)
    k_w = 1
    n = rs.rank
    for w in rs.weyl_group:
        m = [[int(i == j) - w.fund_matrix[i][j] for j in range(n)] for i in range(n)]
        if not any(any(r) for r in m):
            continue
        k_w = lcm(k_w, max(_invariant_factors(m)))
    return k_r, k_w


def saturated_member(rs, sigma, mode="kR2"):
    """Scale sigma by k_R^2 (mode kR2) or k_R k_w (mode kRkw); return oracle membership of the result."""
    rs = build_root_system(rs)
    t = Triple.coerce(rs, sigma)
    if not _integral_dominant(t) or t.flat not in cone_p(rs):
        raise CriterionInapplicable(f"{t} is outside P(G) cap P(R)^3")
    k_r, k_w = saturation_facts(rs)
    if mode == "kR2":
        if not lambda_member(rs, t):
            raise CriterionInapplicable("k_R^2 saturation needs trace in Q(R)")
        k = k_r * k_r
    elif mode == "kRkw":
        k = k_r * k_w
    elif mode == "B2":
        if rs.id != "C2" or not lambda_member(rs, t):
            raise CriterionInapplicable("the factor-2 statement is for C2 with trace in Q(R)")
        k = 2
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return in_tens(rs, t.scaled(k))


# ---------------------------------------------------------------------------
# deep subcone


def deep_threshold(l: int) -> int:
    if l < 2:
        raise ValueError("the threshold is stated for rank >= 2")
    return 2 * l * l * (l + 1) * (4 * l + 5) + 6 * l


def deep_member(sigma, rank=2) -> bool:
    """All cone functionals of P(Sp(4)) at least deep_threshold(2)."""
    if rank != 2:
        raise CriterionInapplicable("only C2 is executable")
    rs = build_root_system("C2")
    t = Triple.coerce(rs, sigma)
    if not lambda_member(rs, t):
        raise CriterionInapplicable("trace must lie in Q(R)")
    bound = deep_threshold(2)
    deep = all(v >= bound for v in cone_p(rs).values(t.flat))
    if deep and not tens_c2_criterion(t):
        raise AssertionError(f"deep triple {t} rejected by the C2 criterion")
    return deep


def sample_deep_triples(count, seed=0, upper=4000):
    """Seeded triples in Lambda with every C2 cone functional >= 324."""
    rng = random.Random(seed)
    cone = cone_p("C2")
    bound = deep_threshold(2)
    out = []
    while len(out) < count:
        x = [rng.randint(bound, upper) for _ in range(6)]
        if (x[0] + x[2] + x[4]) % 2:
            continue
        if all(v >= bound for v in cone.values(tuple(x))):
            out.append(Triple(tuple(x[0:2]), tuple(x[2:4]), tuple(x[4:6])))
    return out


# ---------------------------------------------------------------------------
# decomposition pipeline


DECOMPOSITION_PIECE_CAP = 5_000


def compute_tens_decomposition(rs, max_pieces=DECOMPOSITION_PIECE_CAP, progress=None) -> list[ElementarySet]:
    """Tens(G) as a union of projections of E_sigma over maximal generalized chains."""
    from .pathmodel import build_E_sigma, enumerate_generalized_chains

    rs = build_root_system(rs)
    if rs.rank > 2:
        raise charoracle.ResourceCapExceeded("the decomposition pipeline is limited to rank <= 2")
    _, maximal = enumerate_generalized_chains(rs)
    k_r = saturation_facts(rs)[0]
    out, seen = [], set()
    for s in maximal:
        es = build_E_sigma(rs, s, scale=k_r * k_r)
        pieces = project_onto_first(es.elementary_set, 3 * rs.rank, max_pieces=max_pieces)
        for p in pieces:
            key = (p.inequalities, p.congruences)
            if key not in seen:
                seen.add(key)
                out.append(p)
        if progress:
            progress(s, len(pieces))
    return out


def box_points(rank, box):
    rng = np.arange(box + 1, dtype=np.int64)
    grids = np.meshgrid(*([rng] * (3 * rank)), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def union_mask(sets, pts) -> np.ndarray:
    """Vectorised membership of every row of ``pts`` in the union."""
    mask = np.zeros(len(pts), dtype=bool)
    for E in sets:
        if E.is_empty_marker():
            continue
        m = np.ones(len(pts), dtype=bool)
        for c, b in E.inequalities:
            m &= pts @ np.array([int(x) for x in c], dtype=np.int64) >= int(b)
        for d, mod, r in E.congruences:
            m &= (pts @ np.array(d, dtype=np.int64) - r) % mod == 0
        mask |= m
    return mask


def oracle_mask(rs, pts) -> np.ndarray:
    rs = build_root_system(rs)
    l = rs.rank
    out = np.zeros(len(pts), dtype=bool)
    for k, row in enumerate(pts):
        lam, mu, nu = tuple(row[:l]), tuple(row[l:2 * l]), tuple(row[2 * l:])
        out[k] = charoracle.triple_invariant_dim(rs, lam, mu, nu) > 0
    return out


def cone_lambda_mask(rs, pts) -> np.ndarray:
    rs = build_root_system(rs)
    cone = cone_p(rs)
    m = np.ones(len(pts), dtype=bool)
    for f in cone.functionals:
        m &= pts @ np.array(f.coeffs, dtype=np.int64) >= 0
    l = rs.rank
    tr = pts[:, :l] + pts[:, l:2 * l] + pts[:, 2 * l:]
    m &= np.array([in_root_lattice_fund(rs, tuple(int(c) for c in t)) for t in tr])
    return m


# ---------------------------------------------------------------------------
# scans


def _box_triples(rank, box):
    rng = range(box + 1)
    ws = list(itertools.product(rng, repeat=rank))
    return ws


SCAN_CAP = 1_000_000


def _scan(rs, box, predicate, theorem, workers=1, budget=None):
    """Run ``predicate(lam, mu, nu) -> (relevant, ok)`` over the box.

    At most ``budget`` triples are visited; a truncated scan is marked partial.
    """
    rs = build_root_system(rs)
    t0 = time.time()
    ws = _box_triples(rs.rank, box)
    rep = VerificationReport(theorem, box, system=rs.id)
    budget = SCAN_CAP if budget is None else budget
    if box > charoracle.MAX_COORD:
        rep.partial = True
        rep.details["cap"] = f"box exceeds the oracle cap {charoracle.MAX_COORD}"
        return rep
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [ws[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_scan_chunk, [(rs.id, c, ws, predicate, budget // workers) for c in chunks]))
    else:
        parts = [_scan_chunk((rs.id, ws, ws, predicate, budget))]
    for scanned, bad, capped in parts:
        rep.scanned += scanned
        rep.mismatches.extend(Triple(*b) for b in bad)
        rep.partial = rep.partial or capped
    rep.mismatches.sort(key=_sort_key)
    rep.seconds = time.time() - t0
    return rep


def _scan_chunk(args):
    rs_id, lams, ws, predicate, budget = args
    rs = build_root_system(rs_id)
    scanned, bad = 0, []
    visited = 0
    try:
        for lam in lams:
            for mu in ws:
                for nu in ws:
                    visited += 1
                    if visited > budget:
                        return scanned, bad, True
                    relevant, ok = predicate(rs, lam, mu, nu)
                    if relevant:
                        scanned += 1
                        if not ok:
                            bad.append((lam, mu, nu))
    except charoracle.ResourceCapExceeded:
        return scanned, bad, True
    return scanned, bad, False


def _pred_mainbc(rs, lam, mu, nu):
    t = Triple(lam, mu, nu)
    if t.flat not in cone_p(rs) or not lambda_member(rs, t):
        return False, True
    return True, tens_c2_criterion(t) == in_tens(rs, t)


def _pred_g2(rs, lam, mu, nu):
    t = Triple(lam, mu, nu)
    if t.flat not in cone_p(rs):
        return False, True
    return True, tens_g2_criterion(t) == in_tens(rs, t)


def _pred_saturation(rs, lam, mu, nu):
    t = Triple(lam, mu, nu)
    if t.flat not in cone_p(rs) or not lambda_member(rs, t):
        return False, True
    factor = 2 if rs.id == "C2" else saturation_facts(rs)[0] ** 2
    return True, in_tens(rs, t.scaled(factor))


def _pred_kumar(rs, lam, mu, nu):
    if not c12_member(rs, lam, mu, nu):
        return False, True
    return True, in_tens(rs, (lam, mu, nu))


def _pred_inclusion(rs, lam, mu, nu):
    t = Triple(lam, mu, nu)
    if not in_tens(rs, t):
        return False, True
    return True, t.flat in cone_p(rs) and lambda_member(rs, t)


def _pred_c11(rs, lam, mu, nu):
    t = Triple(lam, mu, nu)
    return True, in_tens(rs, t) == (t.flat in cone_p(rs) and lambda_member(rs, t))


def _nonsingular(t):
    return all(c > 0 for v in t for c in v)


def _pred_c12(rs, lam, mu, nu):
    t = Triple(lam, mu, nu)
    if not _nonsingular(t) or t.flat not in cone_p(rs):
        return False, True
    return True, in_tens(rs, t) == lambda_member(rs, t)


def _pred_c13(rs, lam, mu, nu):
    t = Triple(lam, mu, nu)
    if t.flat not in cone_p(rs):
        return False, True
    return True, in_tens(rs, t) == (not _g2_exceptional(t))


def _pred_bad_pl(rs, lam, mu, nu):
    # non-members inside P(G) cap Lambda; "ok" means member
    t = Triple(lam, mu, nu)
    if t.flat not in cone_p(rs) or not lambda_member(rs, t):
        return False, True
    return True, in_tens(rs, t)


def verify_mainbc(box=6, workers=1):
    return _scan("C2", box, _pred_mainbc, "mainBC", workers)


def verify_g2(box=3, workers=1):
    rep = _scan("G2", box, _pred_g2, "g2", workers)
    gens = {k: in_tens("G2", v) for k, v in G2_GENERATORS.items()}
    rep.details["generators_in_tens"] = gens
    non = sorted(k for k, v in gens.items() if not v)
    rep.details["non_members_among_generators"] = non
    if non != ["eps1", "eps2"]:
        rep.mismatches.append(["generators", non])
    ident = []
    for name, lhs, rhs, eq in g2_nongenerators_in_tens_identities():
        ok = eq and in_tens("G2", lhs)
        ident.append({"identity": name, "value": str(lhs), "holds": eq, "in_tens": in_tens("G2", lhs)})
        if not ok:
            rep.mismatches.append(["identity", name])
    rep.details["identities"] = ident
    rep.details["phi"] = phi_report()
    return rep


def verify_esets(box=6, workers=1):
    """Union of the six C2 elementary sets against the oracle and the criterion."""
    t0 = time.time()
    rs = build_root_system("C2")
    pts = box_points(2, box)
    got = union_mask(elementary_decomposition_c2(), pts)
    truth = oracle_mask(rs, pts)
    crit = criterion_mask_c2(pts)
    rep = VerificationReport("esets", box, scanned=len(pts), system="C2")
    bad = np.nonzero((got != truth) | (got != crit))[0]
    rep.mismatches = [_triple_of_row(pts[k], 2) for k in bad]
    rep.seconds = time.time() - t0
    return rep


def _triple_of_row(row, l):
    row = [int(c) for c in row]
    return Triple(tuple(row[:l]), tuple(row[l:2 * l]), tuple(row[2 * l:]))


def criterion_mask_c2(pts) -> np.ndarray:
    """tens_c2_criterion where applicable, False outside P(G) x Lambda."""
    applicable = cone_lambda_mask("C2", pts)
    two = (pts[:, [0, 2, 4]] == 0).sum(axis=1) >= 2
    tr = pts[:, 0:2] + pts[:, 2:4] + pts[:, 4:6]
    even = np.all(tr % 2 == 0, axis=1)
    return applicable & ~(two & ~even)


def verify_saturation(box=4, workers=1, rs="C2"):
    return _scan(rs, box, _pred_saturation, "saturation", workers)


def verify_kumar(box=6, workers=1, rs="C2"):
    return _scan(rs, box, _pred_kumar, "kumar", workers)


def verify_inclusion(rs, box, workers=1):
    return _scan(rs, box, _pred_inclusion, "inclusion", workers)


def verify_deep(count=10_000, seed=0):
    t0 = time.time()
    rep = VerificationReport("deep", deep_threshold(2), system="C2")
    rep.details["threshold"] = deep_threshold(2)
    rep.details["seed"] = seed
    for t in sample_deep_triples(count, seed):
        rep.scanned += 1
        try:
            if not (deep_member(t) and tens_c2_criterion(t)):
                rep.mismatches.append(t)
        except AssertionError:
            rep.mismatches.append(t)
    rep.seconds = time.time() - t0
    return rep


def verify_decomposition(rs, box, sets=None):
    """Compare a union of elementary sets with the oracle (and the C2 criterion) on the box."""
    rs = build_root_system(rs)
    t0 = time.time()
    if sets is None:
        sets = compute_tens_decomposition(rs)
    pts = box_points(rs.rank, box)
    got = union_mask(sets, pts)
    truth = oracle_mask(rs, pts)
    rep = VerificationReport("decomposition", box, system=rs.id)
    rep.scanned = len(pts)
    bad = np.nonzero(got != truth)[0]
    l = rs.rank
    rep.mismatches = [_triple_of_row(pts[k], l) for k in bad]
    if rs.id == "A2":
        ref = cone_lambda_mask(rs, pts)
        rep.details["disagreements_with_cone_and_trace"] = int(np.count_nonzero(got != ref))
        if np.any(got != ref):
            rep.mismatches.append(["cone_and_trace", int(np.count_nonzero(got != ref))])
    if rs.id == "C2":
        crit = criterion_mask_c2(pts)
        rep.details["disagreements_with_criterion"] = int(np.count_nonzero(got != crit))
        if np.any(got != crit):
            rep.mismatches.append(["criterion", int(np.count_nonzero(got != crit))])
    # S3 closure
    perms = list(itertools.permutations(range(3)))
    idx = {tuple(map(int, p)): k for k, p in enumerate(pts)}
    asym = 0
    for k in np.nonzero(got)[0]:
        p = pts[k]
        blocks = [tuple(p[i * l:(i + 1) * l]) for i in range(3)]
        for pm in perms:
            q = tuple(int(c) for i in pm for c in blocks[i])
            if not got[idx[q]]:
                asym += 1
                break
    rep.details["s3_violations"] = asym
    if asym:
        rep.mismatches.append(["s3", asym])
    rep.details["sets"] = len(sets)
    rep.seconds = time.time() - t0
    return rep


def conjecture_scan(target, rs, box, workers=1) -> VerificationReport:
    rs = build_root_system(rs)
    if target == "C1.1":
        rep = _scan(rs, box, _pred_c11, "C1.1", workers)
        rep.details["simply_laced"] = all(x in (0, -1, 2) for row in rs.cartan_matrix for x in row)
        return rep
    if target == "C1.2":
        return _scan(rs, box, _pred_c12, "C1.2", workers)
    if target == "C1.3":
        P_eq_Q = abs(int(_det_frac([[Fraction(x) for x in r] for r in rs.cartan_matrix]))) == 1
        if not P_eq_Q:
            rep = VerificationReport("C1.3", box, system=rs.id, details={"vacuous": "P(R) != Q(R)"})
            return rep
        if rs.id != "G2":
            raise CriterionInapplicable("C1.3 scan needs an inequality-only description (G2)")
        rep = _scan(rs, box, _pred_c13, "C1.3", workers)
        sets, _ = exceptional_sets_g2()
        rep.details["exceptional_sets_congruence_free"] = all(not E.congruences for E in sets)
        if not rep.details["exceptional_sets_congruence_free"]:
            rep.mismatches.append(["congruences"])
        return rep
    if target == "Kumar2":
        rep = _scan(rs, box, _pred_bad_pl, "Kumar2", workers)
        nonmembers = rep.mismatches
        singular = [t for t in nonmembers if not _nonsingular(t)]
        rep.details["non_members_in_cone"] = len(nonmembers)
        rep.details["singular_non_members"] = len(singular)
        # nonmembers are expected; only a nonsingular-only failure set contradicts the conjecture
        rep.mismatches = [] if (not nonmembers or singular) else list(nonmembers)
        return rep
    raise ValueError(f"unknown conjecture {target!r}")
