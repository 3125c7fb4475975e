"""Chains, piecewise-linear paths, Littelmann root operators and the
elementary sets E_sigma attached to generalized chains.

Vectors are handled in fundamental coordinates throughout: the simple coroot
alpha_i^vee is the i-th coordinate, so the height function used by the root
operators is just a coordinate of the path.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .charoracle import ResourceCapExceeded
from .rootsys import (
    Coroot,
    RootSystemData,
    build_root_system,
    dominate_fund,
    fmt_frac,
    frac_vec,
    in_root_lattice_fund,
    is_dominant_fund,
    orbit_fund,
    parse_frac_list,
    contragredient_fund,
)

CRYSTAL_CAP = 250_000


def _vec(rs, v):
    return frac_vec(rs.fund_of(v))


def _nonzero(v):
    if not any(v):
        raise ValueError("zero vector is not allowed here")


def _reflect(rs, x, coroot, root):
    t = coroot(x)
    return tuple(a - t * r for a, r in zip(x, root))


# ---------------------------------------------------------------------------
# affine reflections and chains


@dataclass(frozen=True)
class AffineReflection:
    """Reflection in the wall {coroot = level}."""

    coroot: Coroot
    root: tuple
    level: int

    def __call__(self, x):
        t = self.coroot(x) - self.level
        return tuple(a - t * r for a, r in zip(x, self.root))


def local_stabilizer_reflections(rs, v) -> list[AffineReflection]:
    """Affine reflections whose wall passes through v."""
    rs = build_root_system(rs)
    x = _vec(rs, v)
    out = []
    for c, r in rs.coroot_root_pairs:
        t = c(x)
        if t.denominator == 1:
            out.append(AffineReflection(c, r, int(t)))
    return out


def _allowed(rs, at):
    """Coroot/root pairs usable as chain witnesses (all, or those fixing ``at``)."""
    pairs = rs.coroot_root_pairs
    if at is None:
        return pairs
    x = _vec(rs, at)
    return tuple((c, r) for c, r in pairs if c(x).denominator == 1)


@dataclass(frozen=True)
class Chain:
    vectors: tuple
    witnesses: tuple = ()

    def validate(self, rs):
        if len(self.witnesses) != len(self.vectors) - 1:
            raise ValueError("need one witness per step")
        pairs = dict(rs.coroot_root_pairs)
        for a, b, beta in zip(self.vectors, self.vectors[1:], self.witnesses):
            if beta not in pairs:
                raise ValueError(f"{beta} is not a positive coroot")
            if not beta(a) < 0 or _reflect(rs, a, beta, pairs[beta]) != tuple(b):
                raise ValueError(f"invalid step {a} -> {b} via {beta}")
        return True

    def __len__(self):
        return len(self.vectors)


def _step_map(rs, eta, at=None):
    """Successors of eta under a single chain step: {image: coroot}."""
    out = {}
    for c, r in _allowed(rs, at):
        if c(eta) < 0:
            out[_reflect(rs, eta, c, r)] = c
    return out


def find_chain(rs, eta, xi, stabilizer_of=None) -> Chain | None:
    """A longest chain from eta to xi (witnesses restricted to W_x if ``stabilizer_of`` is x).

    The step graph is acyclic, so a longest chain is a maximal one: every
    step is a covering.
    """
    rs = build_root_system(rs)
    eta, xi = _vec(rs, eta), _vec(rs, xi)
    _nonzero(eta)
    _nonzero(xi)
    best = {xi: (0, None, None)}

    def longest(u):
        if u in best:
            return best[u][0]
        top = (-1, None, None)
        for v, c in sorted(_step_map(rs, u, stabilizer_of).items()):
            if not ge(rs, v, xi):
                continue
            n = longest(v)
            if n >= 0 and n + 1 > top[0]:
                top = (n + 1, v, c)
        best[u] = top
        return top[0]

    if longest(eta) < 0:
        return None
    vecs, wits = [eta], []
    while vecs[-1] != xi:
        _, v, c = best[vecs[-1]]
        vecs.append(v)
        wits.append(c)
    return Chain(tuple(vecs), tuple(wits))


def _reach(rs, eta):
    """Elements reachable from eta by chains (eta >= result), eta included."""
    cache = rs.__dict__.setdefault("_reach_cache", {})
    if eta not in cache:
        seen = {eta}
        q = deque([eta])
        while q:
            u = q.popleft()
            for v in _step_map(rs, u):
                if v not in seen:
                    seen.add(v)
                    q.append(v)
        cache[eta] = frozenset(seen)
    return cache[eta]


def ge(rs, eta, xi) -> bool:
    return tuple(xi) in _reach(rs, tuple(eta))


def covers(rs, eta, xi) -> bool:
    """eta > xi with nothing strictly in between."""
    if eta == xi or not ge(rs, eta, xi):
        return False
    return not any(z != eta and z != xi and ge(rs, z, xi) for z in _reach(rs, eta))


def is_maximal_chain(rs, c: Chain) -> bool:
    rs = build_root_system(rs)
    c.validate(rs)
    return all(covers(rs, a, b) for a, b in zip(c.vectors, c.vectors[1:]))


def same_chamber(rs, eta, xi) -> bool:
    for w in rs.weyl_group:
        if is_dominant_fund(w.act_fund(eta)) and is_dominant_fund(w.act_fund(xi)):
            return True
    return False


def gtrsim(rs, eta, xi) -> bool:
    """eta >= mu ~ nu >= xi for some mu, nu."""
    below = _reach(rs, eta)
    above = [nu for nu in orbit_fund(rs, xi) if ge(rs, nu, xi)]
    return any(same_chamber(rs, mu, nu) for mu in below for nu in above)


def relation(rs, eta, xi, kind="ge") -> bool:
    rs = build_root_system(rs)
    eta, xi = _vec(rs, eta), _vec(rs, xi)
    _nonzero(eta)
    _nonzero(xi)
    if kind == "ge":
        return ge(rs, eta, xi)
    if kind == "sim":
        return same_chamber(rs, eta, xi)
    if kind == "gtrsim":
        return gtrsim(rs, eta, xi)
    raise ValueError(f"unknown relation {kind!r}")


def _covering_chain_exists(rs, eta, xi, at) -> bool:
    """A W_at-chain from eta to xi all of whose steps are coverings in W."""
    if eta == xi:
        return True
    seen = {eta}
    q = deque([eta])
    while q:
        u = q.popleft()
        for v in _step_map(rs, u, at):
            if v in seen or not covers(rs, u, v) or not ge(rs, v, xi):
                continue
            if v == xi:
                return True
            seen.add(v)
            q.append(v)
    return False


# ---------------------------------------------------------------------------
# PL paths


@dataclass(frozen=True)
class PLPath:
    """Path starting at ``start`` made of segments (velocity, duration).

    ``blocks`` optionally lists the number of segments in each LS factor.
    Everything is in fundamental coordinates.
    """

    start: tuple
    segments: tuple
    blocks: tuple = ()

    def __post_init__(self):
        start = frac_vec(self.start)
        segs = tuple((frac_vec(v), Fraction(d)) for v, d in self.segments)
        for v, d in segs:
            if d <= 0:
                raise ValueError("segment durations must be positive")
            if not any(v):
                raise ValueError("segment directions must be nonzero")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "segments", segs)
        blocks = tuple(int(b) for b in self.blocks)
        if blocks and sum(blocks) != len(segs):
            raise ValueError("block sizes must add up to the number of segments")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def straight(cls, v, start=None):
        v = frac_vec(v)
        return cls(start if start is not None else (0,) * len(v), ((v, 1),), (1,))

    @property
    def duration(self):
        return sum((d for _, d in self.segments), Fraction(0))

    def vertices(self):
        pts = [self.start]
        for v, d in self.segments:
            pts.append(tuple(p + d * c for p, c in zip(pts[-1], v)))
        return pts

    @property
    def endpoint(self):
        return self.vertices()[-1]

    def value_at(self, t):
        """Position at t in [0, 1] (time rescaled by the total duration)."""
        t = Fraction(t) * self.duration
        pos = self.start
        for v, d in self.segments:
            step = min(d, t)
            pos = tuple(p + step * c for p, c in zip(pos, v))
            t -= step
            if t <= 0:
                break
        return pos

    def block_paths(self):
        sizes = self.blocks or (len(self.segments),)
        out, k, pos = [], 0, self.start
        for s in sizes:
            segs = self.segments[k:k + s]
            p = PLPath(pos, segs, (s,))
            out.append(p)
            pos = p.endpoint
            k += s
        return out

    def canonical(self):
        """Merge consecutive equal-velocity segments inside each block."""
        out_segs, out_blocks = [], []
        for p in self.block_paths():
            merged = []
            for v, d in p.segments:
                if merged and merged[-1][0] == v:
                    merged[-1] = (v, merged[-1][1] + d)
                else:
                    merged.append((v, d))
            out_segs.extend(merged)
            out_blocks.append(len(merged))
        return PLPath(self.start, tuple(out_segs), tuple(out_blocks))

    def concat(self, other: "PLPath") -> "PLPath":
        return PLPath(self.start, self.segments + other.segments,
                      (self.blocks or (len(self.segments),)) + (other.blocks or (len(other.segments),)))

    def translate(self, v):
        return PLPath(tuple(a + b for a, b in zip(self.start, frac_vec(v))), self.segments, self.blocks)

    def to_json(self) -> dict:
        return {
            "start": ",".join(fmt_frac(q) for q in self.start),
            "segments": [
                {"direction": ",".join(fmt_frac(q) for q in v), "duration": fmt_frac(d)} for v, d in self.segments
            ],
            "blocks": list(self.blocks),
        }

    @classmethod
    def from_json(cls, data) -> "PLPath":
        if isinstance(data, str):
            data = json.loads(data)
        segs = tuple((parse_frac_list(s["direction"]), Fraction(s["duration"])) for s in data["segments"])
        return cls(parse_frac_list(data["start"]), segs, tuple(data.get("blocks", ())))


def _breaks(p: PLPath):
    """(position, incoming velocity, outgoing velocity) at interior vertices."""
    verts = p.vertices()
    out = []
    for k in range(1, len(p.segments)):
        out.append((verts[k], p.segments[k - 1][0], p.segments[k][0]))
    return out


def _integral(x):
    return all(Fraction(c).denominator == 1 for c in x)


def _orbit_under(rs, v, at):
    pairs = _allowed(rs, at)
    seen = {v}
    q = deque([v])
    while q:
        u = q.popleft()
        for c, r in pairs:
            w = _reflect(rs, u, c, r)
            if w not in seen:
                seen.add(w)
                q.append(w)
    return seen


def _single_flags(rs, p: PLPath):
    billiard = hecke_breaks = ls_breaks = True
    for x, vm, vp in _breaks(p):
        if vm == vp:
            continue
        if vm not in _orbit_under(rs, vp, x):
            billiard = hecke_breaks = ls_breaks = False
            break
        if find_chain(rs, vm, vp, stabilizer_of=x) is None:
            hecke_breaks = ls_breaks = False
            continue
        if not _covering_chain_exists(rs, vm, vp, x):
            ls_breaks = False
    ends = _integral(p.start) and _integral(p.endpoint)
    return billiard, ends and hecke_breaks, ends and ls_breaks


def classify_path(rs, p: PLPath, blocks=None) -> dict:
    """Flags billiard / hecke / ls (path as one piece) and generalized_ls (per block)."""
    rs = build_root_system(rs)
    if not p.segments:
        raise ValueError("empty path")
    if blocks is not None:
        p = PLPath(p.start, p.segments, tuple(blocks))
    q = p.canonical()
    whole = PLPath(q.start, q.segments).canonical()
    billiard, hecke, ls = _single_flags(rs, whole)
    parts = q.block_paths()
    gen = all(_single_flags(rs, b)[2] for b in parts)
    if gen:
        for a, b in zip(parts, parts[1:]):
            if not gtrsim(rs, a.segments[-1][0], b.segments[0][0]):
                gen = False
                break
    return {"billiard": billiard, "hecke": hecke, "ls": ls, "generalized_ls": gen}


@dataclass(frozen=True)
class DeltaLength:
    blocks: tuple
    total: tuple


def delta_length(rs, p: PLPath, blocks=None) -> DeltaLength:
    rs = build_root_system(rs)
    if blocks is not None:
        p = PLPath(p.start, p.segments, tuple(blocks))
    out = []
    for b in p.block_paths():
        acc = (Fraction(0),) * rs.rank
        for v, d in b.segments:
            u, _ = dominate_fund(rs, tuple(d * c for c in v))
            acc = tuple(a + c for a, c in zip(acc, u))
        out.append(acc)
    total = tuple(sum(col, Fraction(0)) for col in zip(*out))
    return DeltaLength(tuple(out), total)


def lemma_trivial_holds(rs, p: PLPath) -> bool:
    """p(0) - p(1) - length_Delta(p) in Q(R)."""
    rs = build_root_system(rs)
    dl = delta_length(rs, p).total
    x = tuple(a - b - c for a, b, c in zip(p.start, p.endpoint, dl))
    return _integral(x) and in_root_lattice_fund(rs, tuple(int(c) for c in x))


# ---------------------------------------------------------------------------
# root operators and crystals
#
# A crystal element is a tuple of (duration, velocity, block) with integer
# velocities and Fraction durations; consecutive equal (velocity, block)
# pieces are merged so the tuple is canonical.


def _merge(segs):
    out = []
    for d, v, b in segs:
        if d == 0:
            continue
        if out and out[-1][1] == v and out[-1][2] == b:
            out[-1] = (out[-1][0] + d, v, b)
        else:
            out.append((d, v, b))
    return tuple(out)


def _heights(segs, i):
    hs = [Fraction(0)]
    for d, v, _ in segs:
        hs.append(hs[-1] + d * v[i])
    return hs


def _sref(rs, v, i):
    return rs.simple_reflect_fund(v, i)


def root_f(rs, segs, i):
    hs = _heights(segs, i)
    m = min(hs)
    if hs[-1] - m < 1:
        return None
    k0 = max(k for k, h in enumerate(hs) if h == m)
    k = k0
    while hs[k + 1] < m + 1:
        k += 1
    d, v, b = segs[k]
    cut = (m + 1 - hs[k]) / v[i]
    out = list(segs[:k0])
    out.extend((dd, _sref(rs, vv, i), bb) for dd, vv, bb in segs[k0:k])
    out.append((cut, _sref(rs, v, i), b))
    out.append((d - cut, v, b))
    out.extend(segs[k + 1:])
    return _merge(out)


def root_e(rs, segs, i):
    hs = _heights(segs, i)
    m = min(hs)
    if m > -1:
        return None
    k1 = min(k for k, h in enumerate(hs) if h == m)
    k = k1 - 1
    while hs[k] < m + 1:
        k -= 1
    d, v, b = segs[k]
    cut = (hs[k] - (m + 1)) / (-v[i])
    out = list(segs[:k])
    out.append((cut, v, b))
    out.append((d - cut, _sref(rs, v, i), b))
    out.extend((dd, _sref(rs, vv, i), bb) for dd, vv, bb in segs[k + 1:k1])
    out.extend(segs[k1:])
    return _merge(out)


def _highest_path(rs, components):
    segs = []
    for i, n in enumerate(components):
        if n:
            v = tuple(n * int(j == i) for j in range(rs.rank))
            segs.append((Fraction(1), v, i))
    return tuple(segs)


def crystal_elements(rs, components, cap=CRYSTAL_CAP):
    """Raw crystal elements generated from pi_{n1 w1} * ... * pi_{nl wl} by the f_i."""
    rs = build_root_system(rs)
    comps = tuple(int(n) for n in components)
    if len(comps) != rs.rank or any(n < 0 for n in comps):
        raise ValueError("components must be rank-many nonnegative integers")
    top = _highest_path(rs, comps)
    seen = {top}
    order = [top]
    q = deque([top])
    while q:
        s = q.popleft()
        for i in range(rs.rank):
            t = root_f(rs, s, i)
            if t is not None and t not in seen:
                seen.add(t)
                order.append(t)
                if len(seen) > cap:
                    raise ResourceCapExceeded(f"crystal exceeds the cap of {cap} paths")
                q.append(t)
    return order


def element_to_path(rs, segs) -> PLPath:
    pieces, blocks = [], []
    for d, v, b in segs:
        if blocks and blocks[-1][0] == b:
            blocks[-1][1] += 1
        else:
            blocks.append([b, 1])
        pieces.append((v, d))
    return PLPath((0,) * rs.rank, tuple(pieces), tuple(n for _, n in blocks))


def crystal(rs, components, cap=CRYSTAL_CAP) -> list[PLPath]:
    """Paths of the crystal generated by the root operators from the
    concatenation of straight fundamental segments."""
    rs = build_root_system(rs)
    if not any(components):
        return [PLPath((0,) * rs.rank, ())]
    return [element_to_path(rs, s) for s in crystal_elements(rs, components, cap)]


def _summary(rs, segs):
    """(endpoint, minimal allowed lambda per coordinate)."""
    pos = [Fraction(0)] * rs.rank
    mins = [Fraction(0)] * rs.rank
    for d, v, _ in segs:
        for c in range(rs.rank):
            pos[c] += d * v[c]
            if pos[c] < mins[c]:
                mins[c] = pos[c]
    end = tuple(int(c) for c in pos)
    need = tuple(int(ceil(-m)) for m in mins)
    return end, need


_SUMMARIES: dict = {}


def crystal_summary(rs, components):
    """Per path: endpoint and the least lambda keeping lambda + path dominant."""
    rs = build_root_system(rs)
    key = (rs.id, rs.cartan_matrix, tuple(components))
    if key not in _SUMMARIES:
        if not any(components):
            _SUMMARIES[key] = [((0,) * rs.rank, (0,) * rs.rank)]
        else:
            _SUMMARIES[key] = [_summary(rs, s) for s in crystal_elements(rs, components)]
    return _SUMMARIES[key]


def path_tensor_decomposition(rs, lam, components) -> dict:
    """{nu: number of crystal paths p with lam + p in the chamber ending at nu}."""
    rs = build_root_system(rs)
    lam = tuple(int(c) for c in rs.fund_of(lam))
    if not is_dominant_fund(lam):
        raise ValueError("lambda must be dominant")
    out: dict = {}
    for end, need in crystal_summary(rs, components):
        if all(l >= n for l, n in zip(lam, need)):
            nu = tuple(l + e for l, e in zip(lam, end))
            out[nu] = out.get(nu, 0) + 1
    return dict(sorted(out.items()))


def path_tensor_multiplicity(rs, lam, components, nu) -> int:
    rs = build_root_system(rs)
    nu = tuple(int(c) for c in rs.fund_of(nu))
    return path_tensor_decomposition(rs, lam, components).get(nu, 0)


# ---------------------------------------------------------------------------
# generalized chains and E_sigma


def orbit_elements(rs):
    """Pi = W.{varpi_i} as (element, orbit index)."""
    out = []
    for i in range(rs.rank):
        w = tuple(int(j == i) for j in range(rs.rank))
        out.extend((e, i) for e in orbit_fund(rs, w))
    return out


def _chain_ok(rs, seq, iota):
    for a, b in zip(seq, seq[1:]):
        if iota[a] > iota[b] or a == b or not gtrsim(rs, a, b):
            return False
    return True


def enumerate_generalized_chains(rs, max_rank=2):
    """All generalized chains Sigma and the inclusion-maximal ones Sigma_max."""
    rs = build_root_system(rs)
    if rs.rank > max_rank:
        raise ResourceCapExceeded(f"exhaustive chain enumeration is limited to rank <= {max_rank}")
    elems = orbit_elements(rs)
    iota = dict(elems)
    succ = {a: [b for b, _ in elems if b != a and iota[a] <= iota[b] and gtrsim(rs, a, b)] for a, _ in elems}
    sigma = []

    def extend(seq):
        sigma.append(tuple(seq))
        for b in succ[seq[-1]]:
            if b not in seq:
                extend(seq + [b])

    for a, _ in elems:
        extend([a])
    sset = set(sigma)

    def refinable(s):
        for k in range(len(s) + 1):
            for b, _ in elems:
                if b in s:
                    continue
                t = s[:k] + (b,) + s[k:]
                if t in sset:
                    return True
        return False

    maximal = [s for s in sigma if not refinable(s)]
    return sorted(sigma), sorted(maximal)


def saturation_factor(rs) -> int:
    """k_R: least k with k v in P(R) for every vertex v of the affine complex."""
    from .semigroup import saturation_facts

    return saturation_facts(rs)[0]


@dataclass(frozen=True)
class ESigma:
    """E_sigma with variables (lambda, n, nu, a_0..a_m) in fundamental coordinates;
    the a variables are scaled by ``scale`` = k_R^2."""

    chain: tuple
    scale: int
    elementary_set: object

    @property
    def n_point_vars(self):
        return 3 * len(self.chain[0])


def build_E_sigma(rs, sigma, scale=None) -> ESigma:
    from .polyhedra import ElementarySet

    rs = build_root_system(rs)
    seq = tuple(tuple(int(c) for c in rs.fund_of(e)) for e in sigma)
    if not seq:
        raise ValueError("empty chain")
    elems = dict(orbit_elements(rs))
    for e in seq:
        if e not in elems:
            raise ValueError(f"{e} is not in W.{{varpi_i}}")
    if not _chain_ok(rs, seq, elems):
        raise ValueError("not a generalized chain")
    K = scale if scale is not None else saturation_factor(rs) ** 2
    l = rs.rank
    m = len(seq)
    n = 3 * l + m
    LAM, NN, NU, A = 0, l, 2 * l, 3 * l
    dual = [contragredient_fund(rs, tuple(int(i == j) for j in range(l))) for i in range(l)]

    def row():
        return [0] * n

    eqs, ineqs, congs = [], [], []
    # block sums
    for i in range(l):
        r = row()
        for j, e in enumerate(seq):
            if elems[e] == i:
                r[A + j] = 1
        r[NN + i] = -K
        eqs.append((tuple(r), 0))
    # endpoint: K lam + sum a_j eta_j = K nu*
    for c in range(l):
        r = row()
        r[LAM + c] = K
        for j, e in enumerate(seq):
            r[A + j] = e[c]
        for d in range(l):
            r[NU + d] -= K * dual[d][c]
        eqs.append((tuple(r), 0))
    # nonnegativity of the a's
    for j in range(m):
        r = row()
        r[A + j] = 1
        ineqs.append((tuple(r), 0))
    # dominance of lam + S_r for r = 0..m
    for k in range(m + 1):
        for c in range(l):
            r = row()
            r[LAM + c] = K
            for j in range(k):
                r[A + j] = seq[j][c]
            ineqs.append((tuple(r), 0))
    # integrality inside blocks and at block ends
    pairs = rs.coroot_root_pairs
    for k in range(m - 1):
        a, b = seq[k], seq[k + 1]
        if elems[a] == elems[b]:
            coroot = next(c for c, rt in pairs if _reflect(rs, a, c, rt) == b)
            r = row()
            for j in range(k + 1):
                r[A + j] = int(coroot(seq[j]))
            congs.append((tuple(r), K, 0))
        else:
            for c in range(l):
                r = row()
                for j in range(k + 1):
                    r[A + j] = seq[j][c]
                congs.append((tuple(r), K, 0))
    E = ElementarySet.build(n, ineqs, congs, equalities=eqs)
    return ESigma(seq, K, E)
