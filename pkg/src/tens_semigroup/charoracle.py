"""Brute-force character oracle: Freudenthal multiplicities, Weyl dimensions
and Brauer-Klimyk tensor decompositions.

All keys are integer tuples in fundamental coordinates.  Tables are memoised
per process in ``_TABLES``; when ``TSL_CACHE_DIR`` is set, dominant weight
tables are also persisted there as one JSON file per (system, weight).
"""
from __future__ import annotations

import json
import os
import tempfile
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod

from .rootsys import (
    RootSystemData,
    contragredient_fund,
    dominate_sign_fund,
    is_dominant_fund,
    orbit_fund,
)

MAX_COORD = 64


class ResourceCapExceeded(RuntimeError):
    pass


@dataclass
class WeightMultiplicityTable:
    highest: tuple[int, ...]
    dominant: dict[tuple[int, ...], int]  # orbit representatives

    def full(self, rs: RootSystemData) -> dict[tuple[int, ...], int]:
        out = {}
        for mu, m in self.dominant.items():
            for beta in orbit_fund(rs, mu):
                out[beta] = m
        return out

    def dimension(self, rs: RootSystemData) -> int:
        return sum(m * len(orbit_fund(rs, mu)) for mu, m in self.dominant.items())


DecompositionTable = dict  # dominant weight (fund coords) -> multiplicity


def _system_key(rs):
    return (rs.id, rs.cartan_matrix)


_TABLES: dict = {}
_FULL: dict = {}
_TENSORS: dict = {}


def clear_caches():
    _TABLES.clear()
    _FULL.clear()
    _TENSORS.clear()


def _check_caps(rs, lam):
    if len(lam) != rs.rank:
        raise ValueError(f"{rs.id}: expected {rs.rank} fundamental coordinates")
    if not is_dominant_fund(lam):
        raise ValueError(f"{lam} is not dominant")
    if max(lam, default=0) > MAX_COORD:
        raise ResourceCapExceeded(f"fundamental coordinates are capped at {MAX_COORD}, got {lam}")


def _int_gram(rs):
    g = rs.fund_gram
    den = 1
    for row in g:
        for q in row:
            den = lcm(den, q.denominator)
    return [[int(q * den) for q in row] for row in g]


def _cache_file(rs, lam):
    d = os.environ.get("TSL_CACHE_DIR")
    if not d:
        return None
    tag = rs.id if rs.id != "custom" else "custom_" + "_".join(str(x) for row in rs.cartan_matrix for x in row)
    return os.path.join(d, f"{tag}__{'_'.join(map(str, lam))}.json")


def _load_disk(rs, lam):
    path = _cache_file(rs, lam)
    if path is None or not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    return {tuple(int(x) for x in k.split(",")): int(v) for k, v in data["dominant"].items()}


def _store_disk(rs, lam, table):
    path = _cache_file(rs, lam)
    if path is None:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    payload = {
        "system": rs.id,
        "highest": list(lam),
        "dominant": {",".join(map(str, k)): v for k, v in sorted(table.items())},
    }
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)


def _dominant_below(rs, lam):
    """Dominant weights mu <= lam (connected by subtracting positive roots)."""
    seen = {lam}
    frontier = [lam]
    roots = rs.positive_roots_fund
    while frontier:
        new = []
        for mu in frontier:
            for r in roots:
                nu = tuple(a - b for a, b in zip(mu, r))
                if nu not in seen and is_dominant_fund(nu):
                    seen.add(nu)
                    new.append(nu)
        frontier = new
    return seen


def weight_multiplicities(rs: RootSystemData, lam) -> WeightMultiplicityTable:
    """Freudenthal's recursion over the dominant weights of V_lam."""
    lam = tuple(int(x) for x in lam)
    _check_caps(rs, lam)
    key = (_system_key(rs), lam)
    if key in _TABLES:
        return _TABLES[key]
    table = _load_disk(rs, lam)
    if table is None:
        table = _freudenthal(rs, lam)
        _store_disk(rs, lam, table)
    out = WeightMultiplicityTable(lam, table)
    _TABLES[key] = out
    return out


def _freudenthal(rs, lam):
    n = rs.rank
    g = _int_gram(rs)

    def ip(x, y):
        return sum(x[i] * g[i][j] * y[j] for i in range(n) for j in range(n))

    rho = rs.rho_fund
    lr = tuple(a + 1 for a in lam)
    top = ip(lr, lr)
    cands = _dominant_below(rs, lam)
    order = sorted(cands, key=lambda mu: top - ip(tuple(a + 1 for a in mu), tuple(a + 1 for a in mu)))
    mult = {}
    roots = rs.positive_roots_fund
    for mu in order:
        if mu == lam:
            mult[mu] = 1
            continue
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = top - ip(mr, mr)
        total = 0
        for r in roots:
            k = 1
            while True:
                w = tuple(a + k * b for a, b in zip(mu, r))
                d, _ = dominate_sign_fund(rs, w)
                m = mult.get(d)
                if not m:
                    break
                total += m * ip(w, r)
                k += 1
        val = Fraction(2 * total, denom)
        if val.denominator != 1 or val < 0:
            raise ArithmeticError(f"Freudenthal produced {val} at {mu}")
        if val:
            mult[mu] = int(val)
    return mult


def all_weights(rs: RootSystemData, lam) -> dict[tuple[int, ...], int]:
    lam = tuple(int(x) for x in lam)
    key = (_system_key(rs), lam)
    if key not in _FULL:
        _FULL[key] = weight_multiplicities(rs, lam).full(rs)
    return _FULL[key]


def weyl_dim(rs: RootSystemData, lam) -> int:
    lam = tuple(int(x) for x in lam)
    if not is_dominant_fund(lam):
        raise ValueError(f"{lam} is not dominant")
    num = den = 1
    for c in rs.positive_coroots:
        num *= sum(ci * (x + 1) for ci, x in zip(c.coeffs, lam))
        den *= sum(c.coeffs)
    assert num % den == 0
    return num // den


def tensor_decompose(rs: RootSystemData, lam, mu) -> DecompositionTable:
    """V_lam (x) V_mu = sum c_nu V_nu via the signed Weyl orbit sum."""
    lam = tuple(int(x) for x in lam)
    mu = tuple(int(x) for x in mu)
    _check_caps(rs, lam)
    _check_caps(rs, mu)
    key = (_system_key(rs), min(lam, mu), max(lam, mu))
    if key in _TENSORS:
        return _TENSORS[key]
    # iterate over the weights of the smaller factor
    if weyl_dim(rs, lam) < weyl_dim(rs, mu):
        lam, mu = mu, lam
    out = defaultdict(int)
    shift = tuple(a + 1 for a in lam)
    for beta, m in all_weights(rs, mu).items():
        v = tuple(a + b for a, b in zip(shift, beta))
        d, sign = dominate_sign_fund(rs, v)
        if 0 in d:
            continue
        out[tuple(a - 1 for a in d)] += sign * m
    table = {k: v for k, v in sorted(out.items()) if v}
    if any(v < 0 for v in table.values()):
        raise ArithmeticError("negative multiplicity in Klimyk sum")
    _TENSORS[key] = table
    return table


def tensor_coefficient(rs: RootSystemData, lam, mu, nu) -> int:
    return tensor_decompose(rs, lam, mu).get(tuple(int(x) for x in nu), 0)


def triple_invariant_dim(rs: RootSystemData, lam, mu, nu) -> int:
    """dim (V_lam (x) V_mu (x) V_nu)^G, the multiplicity of V_{nu*} in V_lam (x) V_mu."""
    nu = tuple(int(x) for x in nu)
    _check_caps(rs, nu)
    return tensor_coefficient(rs, lam, mu, contragredient_fund(rs, nu))


def decomposition_dimension(rs: RootSystemData, table: DecompositionTable) -> int:
    return sum(c * weyl_dim(rs, nu) for nu, c in table.items())


def product_dimension(rs: RootSystemData, *weights) -> int:
    return prod(weyl_dim(rs, w) for w in weights)
