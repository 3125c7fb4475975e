"""Elementary subsets of Z^n, their projections, and the cones P(G) and C^{1,2}.

An elementary set is cut out by rational inequalities ``c.x >= b`` and
congruences ``d.x = r (mod m)``.  Sets are stored in a canonical integer
form: every inequality row has primitive integer coefficients and an integer
right-hand side (tightened to the lattice), every congruence is reduced.
This keeps membership identical on Z^n while making duplicate rows cheap to
spot.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import ceil, floor, gcd, lcm
from typing import Iterable, Sequence

from .rootsys import (
    RootSystemData,
    build_root_system,
    contragredient_fund,
    dominate_fund,
    fmt_frac,
    in_root_lattice_fund,
    is_dominant_fund,
    orbit_fund,
    _inverse,
    _matvec,
)


class DimensionMismatch(ValueError):
    pass


class DegenerateCone(ValueError):
    """Generators do not span the ambient space; ``rank`` is their span dimension."""

    def __init__(self, rank, dim):
        super().__init__(f"generators span a {rank}-dimensional subspace of R^{dim}")
        self.rank = rank
        self.dim = dim


# ---------------------------------------------------------------------------
# canonical rows


def _vec_gcd(xs) -> int:
    return reduce(gcd, (abs(int(x)) for x in xs), 0)


def _canon_ineq(coeffs, rhs):
    """Primitive integer form of ``coeffs . x >= rhs`` valid on Z^n."""
    coeffs = [Fraction(c) for c in coeffs]
    rhs = Fraction(rhs)
    den = reduce(lcm, (c.denominator for c in coeffs), 1)
    ic = [int(c * den) for c in coeffs]
    g = _vec_gcd(ic)
    if g == 0:
        return tuple(ic), rhs  # constant row, caller decides
    ic = [c // g for c in ic]
    b = rhs * den / g
    return tuple(ic), Fraction(ceil(b))


def _canon_cong(coeffs, modulus, residue):
    """Reduced ``d.x = r (mod m)``; returns None when trivially true, False when empty."""
    m = abs(int(modulus))
    if m == 0:
        raise ValueError("modulus must be >= 1")
    d = [int(c) % m for c in coeffs]
    r = int(residue) % m
    g = gcd(_vec_gcd(d), m)
    if r % g:
        return False
    if g > 1:
        d = [c // g for c in d]
        r //= g
        m //= g
    if m == 1:
        return None
    # fix the sign ambiguity: d and -d describe the same constraint
    neg = tuple((-c) % m for c in d)
    if neg < tuple(d):
        d, r = list(neg), (-r) % m
    return tuple(d), m, r


def _crt(r1, m1, r2, m2):
    g = gcd(m1, m2)
    if (r1 - r2) % g:
        return None
    l = m1 // g * m2
    # solve r1 + m1 t = r2 (mod m2)
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * t) % l, l


@dataclass(frozen=True)
class ElementarySet:
    """``{x in Z^dim : c.x >= b for (c, b) in inequalities, d.x = r (m) for (d, m, r)}``."""

    dim: int
    inequalities: tuple = ()
    congruences: tuple = ()

    # construction -----------------------------------------------------
    @classmethod
    def build(cls, dim, inequalities=(), congruences=(), equalities=()):
        ineqs = [(tuple(c), b) for c, b in inequalities]
        for c, b in equalities:
            ineqs.append((tuple(c), b))
            ineqs.append((tuple(-Fraction(x) for x in c), -Fraction(b)))
        for c, _ in ineqs:
            if len(c) != dim:
                raise DimensionMismatch(f"inequality of length {len(c)} in dimension {dim}")
        for d, _, _ in congruences:
            if len(d) != dim:
                raise DimensionMismatch(f"congruence of length {len(d)} in dimension {dim}")
        return es_normalize(cls(dim, tuple(ineqs), tuple(congruences)))

    @classmethod
    def empty(cls, dim):
        return cls(dim, (((0,) * dim, Fraction(1)),), ())

    @classmethod
    def full(cls, dim):
        return cls(dim, (), ())

    def is_empty_marker(self) -> bool:
        return len(self.inequalities) == 1 and not any(self.inequalities[0][0]) and self.inequalities[0][1] > 0

    def __contains__(self, x):
        return es_member(self, x)

    # serialisation ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "inequalities": [
                {"coeffs": [fmt_frac(Fraction(c)) for c in cs], "rhs": fmt_frac(Fraction(b))}
                for cs, b in self.inequalities
            ],
            "congruences": [
                {"coeffs": [int(c) for c in d], "modulus": int(m), "residue": int(r)}
                for d, m, r in self.congruences
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ElementarySet":
        dim = int(data["dim"])
        ineqs = [(tuple(Fraction(c) for c in row["coeffs"]), Fraction(row["rhs"])) for row in data["inequalities"]]
        congs = [(tuple(int(c) for c in row["coeffs"]), int(row["modulus"]), int(row["residue"])) for row in data["congruences"]]
        return cls.build(dim, ineqs, congs)

    def int_rows(self):
        """Integer inequality matrix and rhs (for vectorised evaluation)."""
        return [list(map(int, c)) for c, _ in self.inequalities], [int(b) for _, b in self.inequalities]


def union_to_json(sets: Sequence[ElementarySet], **meta) -> dict:
    out = dict(meta)
    out["sets"] = [s.to_json() for s in sets]
    return out


def union_from_json(data) -> list[ElementarySet]:
    if isinstance(data, str):
        data = json.loads(data)
    return [ElementarySet.from_json(s) for s in data["sets"]]


# ---------------------------------------------------------------------------
# basic operations


def es_member(E: ElementarySet, x) -> bool:
    if len(x) != E.dim:
        raise DimensionMismatch(f"point of length {len(x)} for a set in Z^{E.dim}")
    for c, b in E.inequalities:
        if sum(ci * xi for ci, xi in zip(c, x)) < b:
            return False
    for d, m, r in E.congruences:
        if (sum(di * xi for di, xi in zip(d, x)) - r) % m:
            return False
    return True


def union_member(sets: Iterable[ElementarySet], x) -> bool:
    return any(es_member(E, x) for E in sets)


def es_normalize(E: ElementarySet) -> ElementarySet:
    """Canonical integer rows, duplicate/dominated rows dropped, congruences merged by CRT."""
    n = E.dim
    best: dict[tuple, Fraction] = {}
    for c, b in E.inequalities:
        ic, ib = _canon_ineq(c, b)
        if not any(ic):
            if ib > 0:
                return ElementarySet.empty(n)
            continue
        if ic not in best or ib > best[ic]:
            best[ic] = ib
    # opposite rows c.x >= b and -c.x >= b' are contradictory when b + b' > 0
    for ic, ib in best.items():
        neg = tuple(-c for c in ic)
        if neg in best and ib + best[neg] > 0:
            return ElementarySet.empty(n)
    congs: dict[tuple, tuple[int, int]] = {}
    for d, m, r in E.congruences:
        cc = _canon_cong(d, m, r)
        if cc is None:
            continue
        if cc is False:
            return ElementarySet.empty(n)
        key, m2, r2 = cc
        if key in congs:
            r1, m1 = congs[key]
            merged = _crt(r1, m1, r2, m2)
            if merged is None:
                return ElementarySet.empty(n)
            congs[key] = merged
        else:
            congs[key] = (r2, m2)
    cong_rows = []
    for key, (r, m) in sorted(congs.items()):
        cc = _canon_cong(key, m, r)
        if cc is False:
            return ElementarySet.empty(n)
        if cc is not None:
            cong_rows.append(cc)
    ineqs = tuple(sorted((c, Fraction(b)) for c, b in best.items()))
    return ElementarySet(n, ineqs, tuple(sorted(set(cong_rows))))


def es_intersect(E1: ElementarySet, E2: ElementarySet) -> ElementarySet:
    if E1.dim != E2.dim:
        raise DimensionMismatch(f"cannot intersect sets in Z^{E1.dim} and Z^{E2.dim}")
    return es_normalize(ElementarySet(E1.dim, E1.inequalities + E2.inequalities, E1.congruences + E2.congruences))


def es_permute(E: ElementarySet, perm: Sequence[int]) -> ElementarySet:
    """New coordinate k is old coordinate perm[k]."""
    ineqs = tuple((tuple(c[p] for p in perm), b) for c, b in E.inequalities)
    congs = tuple((tuple(d[p] for p in perm), m, r) for d, m, r in E.congruences)
    return es_normalize(ElementarySet(E.dim, ineqs, congs))


def es_substitute_affine(E: ElementarySet, matrix, offset) -> ElementarySet:
    """Pull back along y -> M y + t (M is dim(E) x k, integer)."""
    k = len(matrix[0]) if matrix else 0
    ineqs = []
    for c, b in E.inequalities:
        nc = tuple(sum(c[i] * matrix[i][j] for i in range(E.dim)) for j in range(k))
        ineqs.append((nc, b - sum(c[i] * offset[i] for i in range(E.dim))))
    congs = []
    for d, m, r in E.congruences:
        nd = tuple(sum(d[i] * matrix[i][j] for i in range(E.dim)) for j in range(k))
        congs.append((nd, m, r - sum(d[i] * offset[i] for i in range(E.dim))))
    return es_normalize(ElementarySet(k, tuple(ineqs), tuple(congs)))


# ---------------------------------------------------------------------------
# Fourier-Motzkin (real shadow)


def fm_eliminate(inequalities, var: int):
    """Real projection of ``{c.x >= b}`` along coordinate ``var``.

    Returns the system in the remaining coordinates (``var`` dropped).  An
    infeasible system comes back as the single row ``0 >= 1``.
    """
    rows = [(tuple(Fraction(c) for c in cs), Fraction(b)) for cs, b in inequalities]
    if not rows:
        return []
    n = len(rows[0][0])
    keep, lower, upper = [], [], []
    for c, b in rows:
        a = c[var]
        rest = c[:var] + c[var + 1:]
        if a == 0:
            keep.append((rest, b))
        elif a > 0:
            lower.append((rest, b, a))  # a x_v >= b - rest.x
        else:
            upper.append((rest, b, a))
    out = list(keep)
    for (rl, bl, al), (ru, bu, au) in itertools.product(lower, upper):
        # (bl - rl.x)/al <= x_v <= (bu - ru.x)/au   (au < 0)
        coeffs = tuple(-au * x + al * y for x, y in zip(rl, ru))
        out.append((coeffs, -au * bl + al * bu))
    cleaned = []
    for c, b in out:
        if not any(c):
            if b > 0:
                return [((Fraction(0),) * (n - 1), Fraction(1))]
            continue
        cleaned.append((c, b))
    # scale-normalise and drop duplicates
    seen = {}
    for c, b in cleaned:
        s = max(abs(x) for x in c)
        key = tuple(x / s for x in c)
        val = b / s
        if key not in seen or val > seen[key]:
            seen[key] = val
    return sorted(seen.items())


def rational_feasible(inequalities) -> bool:
    """Exact LP feasibility of ``{c.x >= b}`` over Q^n, by Fourier-Motzkin
    with scale/duplicate pruning.  Intended for the small systems used here."""
    rows = [(tuple(Fraction(c) for c in cs), Fraction(b)) for cs, b in inequalities]
    if not rows:
        return True
    n = len(rows[0][0])
    for _ in range(n):
        if not rows:
            return True
        # eliminate the coordinate minimising the FM product
        best, cost = 0, None
        width = len(rows[0][0])
        for v in range(width):
            lo = sum(1 for c, _ in rows if c[v] > 0)
            up = sum(1 for c, _ in rows if c[v] < 0)
            k = lo * up - lo - up
            if cost is None or k < cost:
                best, cost = v, k
        rows = fm_eliminate(rows, best)
        if rows and not any(rows[0][0]) and rows[0][1] > 0:
            return False
    return all(b <= 0 for _, b in rows)


# ---------------------------------------------------------------------------
# projection of elementary sets


def _split_rows(E: ElementarySet):
    """Inequalities by sign of the last coefficient; exact equalities detected."""
    last = E.dim - 1
    keep, lower, upper = [], [], []
    rows = {c: b for c, b in E.inequalities}
    eqs = []
    for c, b in E.inequalities:
        a = c[last]
        if a == 0:
            keep.append((c, b))
        elif a > 0:
            neg = tuple(-x for x in c)
            if neg in rows and rows[neg] == -b:
                eqs.append((c, b))
            lower.append((c, b))
        else:
            upper.append((c, b))
    return keep, lower, upper, eqs


def _project_with_equality(E: ElementarySet, eq) -> ElementarySet:
    """Eliminate the last variable a using c_a a + c_x.x = b (c_a > 0)."""
    n = E.dim
    c, b = eq
    ca = int(c[-1])
    cx = [int(x) for x in c[:-1]]
    b = int(b)
    ineqs = []
    for e, f in E.inequalities:
        ea = int(e[-1])
        ex = [int(x) for x in e[:-1]]
        # multiply by ca > 0 and substitute ca*a = b - cx.x
        ineqs.append((tuple(ca * x - ea * y for x, y in zip(ex, cx)), ca * int(f) - ea * b))
    congs = [(tuple(cx), ca, b)]  # b - cx.x divisible by ca
    for d, m, r in E.congruences:
        da = d[-1]
        dx = d[:-1]
        congs.append((tuple(ca * x - da * y for x, y in zip(dx, cx)), m * ca, ca * r - da * b))
    return es_normalize(ElementarySet(n - 1, tuple(ineqs), tuple(congs)))


def _bound(row, ca_scale, r):
    """Row c.x + ca*a >= b with a = kappa*q + r -> (cx, D, rhs) meaning D q + cx.x >= rhs."""
    c, b = row
    a = int(c[-1])
    return tuple(int(x) for x in c[:-1]), a * ca_scale, int(b) - a * r


def es_project_last(E: ElementarySet, max_pieces: int | None = None) -> list[ElementarySet]:
    """Project ``E`` to the first ``dim - 1`` coordinates, exactly, as a finite union.

    Mechanism: congruences on the eliminated variable ``a`` are cleared by
    splitting ``a`` into residue classes modulo kappa (the lcm of their
    moduli), ``a = kappa q + r``.  The remaining integer variable ``q`` is
    free of congruences and exists iff ``ceil(L_i) <= U_j`` for every lower
    bound ``L_i`` and upper bound ``U_j``; a rational ``L_i = N_i / D_i`` is
    handled by splitting on the residue of ``N_i`` mod ``D_i``.  An exact
    equation in ``a`` short-circuits all of this by substitution.
    """
    E = es_normalize(E)
    n = E.dim
    if n == 0:
        raise DimensionMismatch("cannot project a 0-dimensional set")
    if E.is_empty_marker():
        return []
    keep, lower, upper, eqs = _split_rows(E)
    if eqs:
        eq = min(eqs, key=lambda e: abs(e[0][-1]))
        out = _project_with_equality(E, eq)
        return [] if out.is_empty_marker() else [out]

    a_congs = [(d, m, r) for d, m, r in E.congruences if d[-1] % m]
    x_congs = [(d[:-1], m, r) for d, m, r in E.congruences if not d[-1] % m]
    kappa = reduce(lcm, (m for _, m, _ in a_congs), 1)
    base = [(c[:-1], b) for c, b in keep]
    pieces: list[ElementarySet] = []
    for r in range(kappa):
        congs = list(x_congs) + [(d[:-1], m, res - d[-1] * r) for d, m, res in a_congs]
        head = es_normalize(ElementarySet(n - 1, tuple(base), tuple(congs)))
        if head.is_empty_marker():
            continue
        if not lower or not upper:
            pieces.append(head)
            continue
        lows = [_bound(row, kappa, r) for row in lower]  # D q >= rhs - cx.x
        ups = [_bound(row, kappa, r) for row in upper]  # -D' q >= ... (D' < 0)
        pieces.extend(_eliminate_q(head, lows, ups))
        if max_pieces is not None and len(pieces) > max_pieces:
            raise ProjectionBlowup(len(pieces))
    return _dedupe(pieces)


class ProjectionBlowup(RuntimeError):
    pass


def _eliminate_q(head: ElementarySet, lows, ups) -> list[ElementarySet]:
    """Integer q with D_i q >= N_i(x) (lower) and D_j q >= N_j(x), D_j < 0 (upper).

    Lower bound value L_i = (rhs_i - cx_i.x)/D_i; upper U_j = (cx_j.x - rhs_j)/|D_j|.
    """
    m = head.dim
    L = [(tuple(-x for x in cx), rhs, D) for cx, D, rhs in lows]  # numerator P.x + p0 over D
    U = [(tuple(x for x in cx), -rhs, -D) for cx, D, rhs in ups]  # numerator P.x + p0 over D>0

    def le_row(num_l, den_l, num_u, den_u, extra=0):
        # (num_l + extra)/den_l <= num_u/den_u  <=>  den_l*num_u - den_u*(num_l+extra) >= 0
        (pl, cl), (pu, cu) = num_l, num_u
        coeffs = tuple(den_l * u - den_u * l for l, u in zip(pl, pu))
        return coeffs, -(den_l * cu - den_u * (cl + extra))

    lo_frac = [i for i, (_, _, D) in enumerate(L) if D > 1]
    up_frac = [j for j, (_, _, D) in enumerate(U) if D > 1]

    def prod_cost(idx, bounds):
        return reduce(lambda acc, i: acc * bounds[i][2], idx, 1)

    options = [("lower_all", prod_cost(lo_frac, L)), ("upper_all", prod_cost(up_frac, U))]
    if len(lo_frac) > 1:
        options.append(("lower_max", sum(L[i][2] for i in lo_frac)))
    if len(up_frac) > 1:
        options.append(("upper_min", sum(U[j][2] for j in up_frac)))
    mode = min(options, key=lambda o: o[1])[0]

    # integral side: exact FM rows, no splitting needed
    def pair_rows(ceil_lower: bool, li, uj, extra):
        pl, cl, dl = L[li]
        pu, cu, du = U[uj]
        if ceil_lower:
            # ceil(L) = (N + extra)/dl integer; condition ceil(L) <= U
            return le_row((pl, cl), dl, (pu, cu), du, extra)
        # floor(U) = (N_u - extra)/du; condition L <= floor(U)
        return le_row((pl, cl), dl, (pu, cu - extra), du, 0)

    out = []
    if mode in ("lower_all", "lower_max"):
        split = lo_frac
        fixed = [i for i in range(len(L)) if i not in split]
        base_rows = [pair_rows(True, i, j, 0) for i in fixed for j in range(len(U))]
        if mode == "lower_all":
            choices = itertools.product(*[range(L[i][2]) for i in split])
            for combo in choices:
                rows, congs = list(base_rows), []
                for i, s in zip(split, combo):
                    pl, cl, dl = L[i]
                    congs.append((pl, dl, s - cl))  # P.x + c0 = s (mod D)
                    rows.extend(pair_rows(True, i, j, (-s) % dl) for j in range(len(U)))
                out.append(_assemble(head, rows, congs))
        else:
            for i in split:
                pl, cl, dl = L[i]
                dominance = [le_row(L[k][:2], L[k][2], (pl, cl), dl) for k in split if k != i]
                for s in range(dl):
                    rows = base_rows + dominance + [pair_rows(True, i, j, (-s) % dl) for j in range(len(U))]
                    out.append(_assemble(head, rows, [(pl, dl, s - cl)]))
    else:
        split = up_frac
        fixed = [j for j in range(len(U)) if j not in split]
        base_rows = [pair_rows(False, i, j, 0) for j in fixed for i in range(len(L))]
        if mode == "upper_all":
            for combo in itertools.product(*[range(U[j][2]) for j in split]):
                rows, congs = list(base_rows), []
                for j, s in zip(split, combo):
                    pu, cu, du = U[j]
                    congs.append((pu, du, s - cu))
                    rows.extend(pair_rows(False, i, j, s) for i in range(len(L)))
                out.append(_assemble(head, rows, congs))
        else:
            for j in split:
                pu, cu, du = U[j]
                # U_j is the minimum: U_j <= U_k
                dominance = [le_row((pu, cu), du, U[k][:2], U[k][2]) for k in split if k != j]
                for s in range(du):
                    rows = base_rows + dominance + [pair_rows(False, i, j, s) for i in range(len(L))]
                    out.append(_assemble(head, rows, [(pu, du, s - cu)]))
    return [E for E in out if not E.is_empty_marker()]


def _assemble(head, rows, congs):
    return es_normalize(ElementarySet(head.dim, head.inequalities + tuple(rows), head.congruences + tuple(congs)))


def _dedupe(sets):
    seen, out = set(), []
    for E in sets:
        key = (E.inequalities, E.congruences)
        if key not in seen and not E.is_empty_marker():
            seen.add(key)
            out.append(E)
    return out


def es_prune(sets: Iterable[ElementarySet]) -> list[ElementarySet]:
    """Drop sets whose rational relaxation is empty."""
    return [E for E in sets if not E.is_empty_marker() and rational_feasible(E.inequalities)]


def es_drop_redundant(E: ElementarySet) -> ElementarySet:
    """Remove inequality rows implied (over Q) by the others."""
    rows = list(E.inequalities)
    i = 0
    while i < len(rows):
        c, b = rows[i]
        others = rows[:i] + rows[i + 1:]
        # row is redundant iff others + (c.x <= b - 1) infeasible over the integers;
        # use the rational test with c.x <= b - 1 (valid since c.x is integral)
        test = others + [(tuple(-x for x in c), -(b - 1))]
        if not rational_feasible(test):
            rows.pop(i)
        else:
            i += 1
    return ElementarySet(E.dim, tuple(rows), E.congruences)


def project_onto_first(E: ElementarySet, k: int, choose=None, prune=True, max_pieces=None) -> list[ElementarySet]:
    """Project to the first ``k`` coordinates by repeated ``es_project_last``.

    ``choose(E, candidates)`` may pick which trailing coordinate to eliminate
    next; by default a coordinate with an exact unit equation is preferred,
    then the one with the fewest lower*upper bound pairs.
    """
    work = [E]
    while work and work[0].dim > k:
        nxt = []
        for F in work:
            v = (choose or _choose_var)(F, range(k, F.dim))
            perm = [i for i in range(F.dim) if i != v] + [v]
            G = es_permute(F, perm)
            pieces = es_project_last(G, max_pieces=max_pieces)
            if prune:
                pieces = es_prune(pieces)
            nxt.extend(pieces)
            if max_pieces is not None and len(nxt) > max_pieces:
                raise ProjectionBlowup(len(nxt))
        work = _dedupe(nxt)
    return work


def _choose_var(E: ElementarySet, candidates):
    rows = {c: b for c, b in E.inequalities}
    best, best_key = None, None
    for v in candidates:
        unit_eq = eq = False
        lo = up = 0
        for c, b in E.inequalities:
            a = c[v]
            if a > 0:
                lo += 1
                neg = tuple(-x for x in c)
                if rows.get(neg) == -b:
                    eq = True
                    unit_eq = unit_eq or a == 1
            elif a < 0:
                up += 1
        cong = any(d[v] % m for d, m, _ in E.congruences)
        key = (0 if unit_eq else 1 if eq else 2, cong, lo * up)
        if best_key is None or key < best_key:
            best, best_key = v, key
    return best


# ---------------------------------------------------------------------------
# conic hulls by double description


@dataclass(frozen=True)
class LinearFunctional:
    coeffs: tuple
    label: str = ""

    def __post_init__(self):
        if not any(self.coeffs):
            raise ValueError("a linear functional must be nonzero")

    def __call__(self, x):
        return sum(c * v for c, v in zip(self.coeffs, x))


def _rank(rows) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    if not m:
        return 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _primitive(v):
    g = _vec_gcd(v)
    return tuple(int(x) // g for x in v) if g else tuple(int(x) for x in v)


def conic_hull_facets(generators, labels=None) -> list[LinearFunctional]:
    """Facet normals psi (primitive, psi >= 0 on the hull) of cone(generators).

    The facets are the extreme rays of the dual cone {psi : psi . g >= 0};
    they are found by the double description method in exact integers.
    """
    gens = []
    seen = set()
    for g in generators:
        p = _primitive(g)
        if any(p) and p not in seen:
            seen.add(p)
            gens.append(p)
    if not gens:
        raise DegenerateCone(0, 0)
    d = len(gens[0])
    r = _rank(gens)
    if r < d:
        raise DegenerateCone(r, d)
    # initial simplex: d independent generators
    basis = []
    for g in gens:
        if _rank(basis + [g]) > len(basis):
            basis.append(g)
        if len(basis) == d:
            break
    inv = _inverse(basis)  # columns are dual rays: basis . inv = I
    rays = []
    for j in range(d):
        col = [inv[i][j] for i in range(d)]
        den = reduce(lcm, (Fraction(x).denominator for x in col), 1)
        rays.append(_primitive([x * den for x in col]))
    processed = list(basis)
    rest = [g for g in gens if g not in basis]

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    zero_sets = {ray: frozenset(i for i, g in enumerate(processed) if dot(g, ray) == 0) for ray in rays}
    for g in rest:
        vals = {ray: dot(g, ray) for ray in rays}
        pos = [ray for ray in rays if vals[ray] > 0]
        neg = [ray for ray in rays if vals[ray] < 0]
        zer = [ray for ray in rays if vals[ray] == 0]
        idx = len(processed)
        processed.append(g)
        new_rays = pos + zer
        new_zero = {ray: zero_sets[ray] | ({idx} if vals[ray] == 0 else frozenset()) for ray in new_rays}
        if neg:
            candidates = pos + zer + neg
            for rp in pos:
                for rn in neg:
                    common = zero_sets[rp] & zero_sets[rn]
                    if len(common) < d - 2:
                        continue
                    adjacent = True
                    for other in candidates:
                        if other is rp or other is rn:
                            continue
                        if common <= zero_sets[other]:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    nr = _primitive([vals[rp] * b - vals[rn] * a for a, b in zip(rp, rn)])
                    if nr not in new_zero:
                        new_rays.append(nr)
                        new_zero[nr] = common | {idx}
        rays = new_rays
        zero_sets = new_zero
    labels = labels or {}
    return [LinearFunctional(ray, labels.get(ray, "")) for ray in sorted(rays)]


def hull_contains(facets: Sequence[LinearFunctional], x) -> bool:
    return all(f(x) >= 0 for f in facets)


# ---------------------------------------------------------------------------
# P(G)


@dataclass(frozen=True)
class ConeSystem:
    """Homogeneous cone {psi >= 0 for all psi} over Z^{3 rank} (fundamental coordinates)."""

    system: str
    stability: tuple
    chamber: tuple

    @property
    def functionals(self):
        return self.stability + self.chamber

    def __contains__(self, sigma):
        x = flatten(sigma)
        return all(f(x) >= 0 for f in self.functionals)

    def values(self, sigma):
        x = flatten(sigma)
        return [f(x) for f in self.functionals]

    def as_elementary_set(self) -> ElementarySet:
        n = len(self.functionals[0].coeffs)
        return ElementarySet.build(n, [(f.coeffs, 0) for f in self.functionals])


def flatten(sigma):
    if len(sigma) and isinstance(sigma[0], (tuple, list)):
        return tuple(int(c) if Fraction(c).denominator == 1 else Fraction(c) for w in sigma for c in w)
    return tuple(sigma)


def _c2_stability():
    """Sp(4) stability inequalities written over fundamental coordinates.

    A weight a varpi_1 + b varpi_2 has orthonormal coordinates x = a + b,
    y = b.  The S/2 family is stored doubled (S - 2x_i - 2y_j >= 0) so that it
    is the varpi_2-pairing functional with integer coefficients.
    """
    def xy(i):
        # coefficient vectors over (a1,b1,a2,b2,a3,b3) for x_i and y_i
        x = [0] * 6
        y = [0] * 6
        x[2 * i] = 1
        x[2 * i + 1] = 1
        y[2 * i + 1] = 1
        return x, y

    X = [xy(i)[0] for i in range(3)]
    Y = [xy(i)[1] for i in range(3)]

    def comb(*terms):
        out = [0] * 6
        for k, v in terms:
            out = [o + k * t for o, t in zip(out, v)]
        return tuple(out)

    funcs = []
    for i in range(3):
        j, k = [t for t in range(3) if t != i]
        funcs.append(LinearFunctional(comb((1, X[j]), (1, X[k]), (-1, X[i])), f"x{i+1}<=x{j+1}+x{k+1}"))
    for i, j, k in itertools.permutations(range(3)):
        funcs.append(LinearFunctional(comb((1, Y[j]), (1, X[k]), (-1, Y[i])), f"y{i+1}<=y{j+1}+x{k+1}"))
    S = comb(*[(1, X[t]) for t in range(3)], *[(1, Y[t]) for t in range(3)])
    for i in range(3):
        for j in range(3):
            funcs.append(LinearFunctional(comb((1, S), (-2, X[i]), (-2, Y[j])), f"x{i+1}+y{j+1}<=S/2"))
    return tuple(funcs)


def _chamber(rank):
    out = []
    for w in range(3):
        for i in range(rank):
            c = [0] * (3 * rank)
            c[w * rank + i] = 1
            out.append(LinearFunctional(tuple(c), f"chamber{w+1}.{i+1}"))
    return tuple(out)


def s3_orbit(sigma):
    return sorted(set(itertools.permutations(sigma)))


_CONES: dict = {}


def cone_p(rs) -> ConeSystem:
    """P(G) for A2, C2, G2 over fundamental coordinates of the triple."""
    rs = build_root_system(rs)
    if rs.id in _CONES:
        return _CONES[rs.id]
    if rs.id == "C2":
        cone = ConeSystem("C2", _c2_stability(), _chamber(2))
    elif rs.id == "G2":
        from .semigroup import g2_generator_orbits

        facets = conic_hull_facets([flatten(s) for s in g2_generator_orbits()])
        cone = _split_facets("G2", facets, 2)
    elif rs.id == "A2":
        cone = _split_facets("A2", a2_facets_from_oracle(rs, 4), 2)
    else:
        raise ValueError(f"P(G) is only available for A2, C2, G2, not {rs.id}")
    _CONES[rs.id] = cone
    return cone


def _split_facets(name, facets, rank):
    chamber = _chamber(rank)
    ch = {f.coeffs for f in chamber}
    stab = tuple(LinearFunctional(f.coeffs, f"stab{k}") for k, f in enumerate(x for x in facets if x.coeffs not in ch))
    return ConeSystem(name, stab, chamber)


def a2_facets_from_oracle(rs, box):
    from .charoracle import triple_invariant_dim

    pts = []
    rng = range(box + 1)
    for lam in itertools.product(rng, repeat=2):
        for mu in itertools.product(rng, repeat=2):
            for nu in itertools.product(rng, repeat=2):
                if triple_invariant_dim(rs, lam, mu, nu) > 0:
                    pts.append(lam + mu + nu)
    return conic_hull_facets(pts)


# ---------------------------------------------------------------------------
# much greater, weight support, C^{1,2}


def _in_positive_root_cone(rs, x) -> bool:
    """x in the real cone spanned by positive roots (fundamental coordinates)."""
    inv = rs.__dict__.get("_cartan_inv")
    if inv is None:
        inv = _inverse(rs.cartan_matrix)
        rs.__dict__["_cartan_inv"] = inv
    return all(c >= 0 for c in _matvec(inv, x))


def much_greater(rs, lam, mu) -> bool:
    """lam >> mu: lam + w(mu) is dominant for every w."""
    rs = build_root_system(rs)
    lam = rs.fund_of(lam)
    for beta in orbit_fund(rs, rs.fund_of(mu)):
        if not is_dominant_fund(tuple(a + b for a, b in zip(lam, beta))):
            return False
    return True


def weight_support_test(rs, beta, mu) -> bool:
    """beta in Weight(V_mu): w beta <= mu (real dominance) for all w and mu - beta in Q(R)."""
    rs = build_root_system(rs)
    beta = rs.fund_of(beta)
    mu = rs.fund_of(mu)
    if not is_dominant_fund(mu):
        raise ValueError("mu must be dominant")
    if not in_root_lattice_fund(rs, tuple(a - b for a, b in zip(mu, beta))):
        return False
    dom, _ = dominate_fund(rs, beta)
    return _in_positive_root_cone(rs, tuple(a - b for a, b in zip(mu, dom)))


def c12_member(rs, lam, mu, nu) -> bool:
    """(lam, mu, nu) in C^{1,2} with trace in Q(R), i.e. in S_3(G)^{1,2}."""
    rs = build_root_system(rs)
    lam, mu, nu = (tuple(int(c) for c in rs.fund_of(v)) for v in (lam, mu, nu))
    if not much_greater(rs, lam, mu):
        return False
    trace = tuple(a + b + c for a, b, c in zip(lam, mu, nu))
    if not in_root_lattice_fund(rs, trace):
        return False
    beta = tuple(a - b for a, b in zip(contragredient_fund(rs, nu), lam))
    dom, _ = dominate_fund(rs, beta)
    return _in_positive_root_cone(rs, tuple(a - b for a, b in zip(mu, dom)))
