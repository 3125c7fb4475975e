"""Root systems, Weyl groups and weight lattices in exact arithmetic.

Every weight lives in an ambient rational vector space ``V`` with a rational
Gram matrix.  For the built-in ``C2`` the ambient coordinates are the usual
orthonormal ``(x, y)`` with chamber ``x >= y >= 0``; for ``A1`` the ambient
coordinate is the fundamental coordinate; for ``A2``, ``G2`` and custom Cartan
matrices (where an orthonormal rational model does not exist) the ambient
coordinates are simple-root coordinates with the symmetrised Cartan form as
inner product.

Internally almost everything is done in fundamental-weight coordinates, where
integral weights are integer tuples, the simple coroot ``alpha_i^v`` is the
``i``-th coordinate functional and the simple reflection is
``s_i(x) = x - x_i * alpha_i``.

Cartan matrix convention: ``cartan[i][j] = <alpha_i^v, alpha_j>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

WEYL_GROUP_CAP = 5000

BUILTIN_CARTAN = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    # alpha_1 short (e1 - e2), alpha_2 long (2 e2)
    "C2": ((2, -2), (-1, 2)),
    # alpha_1 short, alpha_2 long; varpi_2 is the longer fundamental weight
    "G2": ((2, -3), (-1, 2)),
}


class RootSystemError(ValueError):
    pass


def frac_vec(xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


def fmt_frac(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_frac_list(text: str) -> tuple[Fraction, ...]:
    """Parse ``"p/q,p/q,..."``."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse weight {text!r}: {exc}") from None


def _matvec(m, v):
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def _matmul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def _inverse(m):
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise RootSystemError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def _det(m) -> Fraction:
    a = [list(map(Fraction, row)) for row in m]
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


@dataclass(frozen=True)
class Weight:
    """A vector of V in ambient coordinates.

    Equality is structural on the exact coordinates; ``system`` only supplies
    the fundamental-coordinate view.
    """

    coords: tuple[Fraction, ...]
    system: "RootSystemData | None" = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "coords", frac_vec(self.coords))

    @property
    def fund_coords(self) -> tuple[Fraction, ...]:
        if self.system is None:
            raise RootSystemError("weight is not attached to a root system")
        return self.system.to_fund(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)), self.system)

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)), self.system)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords), self.system)

    def __mul__(self, k) -> "Weight":
        k = Fraction(k)
        return Weight(tuple(k * a for a in self.coords), self.system)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def serialize(self) -> str:
        """``"p/q,p/q,..."`` in fundamental coordinates."""
        return ",".join(fmt_frac(q) for q in self.fund_coords)


@dataclass(frozen=True)
class Coroot:
    """A coroot as a linear functional; ``coeffs`` are its coordinates in the
    simple-coroot basis, so its value on fundamental coordinates x is
    ``sum(coeffs[i] * x[i])``."""

    coeffs: tuple[int, ...]

    def __call__(self, fund) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, fund)), Fraction(0))

    def __str__(self):
        return "coroot(" + ",".join(map(str, self.coeffs)) + ")"


@dataclass(frozen=True)
class WeylElem:
    """Weyl group element: its matrix on fundamental coordinates (integer),
    its matrix on ambient coordinates and a reduced word."""

    fund_matrix: tuple[tuple[int, ...], ...]
    matrix: tuple[tuple[Fraction, ...], ...] = field(compare=False)
    word: tuple[int, ...] = field(compare=False)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1

    def act_fund(self, x):
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.fund_matrix)


@dataclass(frozen=True, eq=False)
class RootSystemData:
    id: str
    cartan_matrix: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[Fraction, ...], ...]  # column j = varpi_j in ambient coords
    gram: tuple[tuple[Fraction, ...], ...]  # inner product on ambient coords
    root_lengths: tuple[Fraction, ...]  # (alpha_i, alpha_i)
    positive_roots_root: tuple[tuple[int, ...], ...]  # simple-root coordinates
    weyl_group: tuple[WeylElem, ...]

    # --- basic shape -------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    def __repr__(self):
        return f"RootSystemData({self.id!r})"

    @cached_property
    def basis_inv(self):
        return _inverse(self.basis)

    def to_fund(self, ambient) -> tuple[Fraction, ...]:
        return _matvec(self.basis_inv, frac_vec(ambient))

    def to_ambient(self, fund) -> tuple[Fraction, ...]:
        return _matvec(self.basis, frac_vec(fund))

    def weight(self, *ambient) -> Weight:
        if len(ambient) == 1 and not isinstance(ambient[0], (int, Fraction)):
            ambient = tuple(ambient[0])
        if len(ambient) != self.rank:
            raise RootSystemError(f"{self.id}: expected {self.rank} coordinates, got {len(ambient)}")
        return Weight(frac_vec(ambient), self)

    def fund(self, *fund) -> Weight:
        if len(fund) == 1 and not isinstance(fund[0], (int, Fraction)):
            fund = tuple(fund[0])
        if len(fund) != self.rank:
            raise RootSystemError(f"{self.id}: expected {self.rank} coordinates, got {len(fund)}")
        return Weight(self.to_ambient(fund), self)

    def as_weight(self, v) -> Weight:
        """Weights pass through; bare sequences are fundamental coordinates."""
        if isinstance(v, Weight):
            return v if v.system is self else Weight(v.coords, self)
        return self.fund(*v)

    def fund_of(self, v) -> tuple[Fraction, ...]:
        if isinstance(v, Weight):
            return self.to_fund(v.coords)
        return frac_vec(v)

    def int_fund(self, v) -> tuple[int, ...]:
        f = self.fund_of(v)
        if any(q.denominator != 1 for q in f):
            raise RootSystemError(f"{self.id}: {v} is not in the weight lattice")
        return tuple(int(q) for q in f)

    def zero(self) -> Weight:
        return self.fund(*([0] * self.rank))

    # --- roots and coroots (fundamental coordinates) -----------------
    @cached_property
    def simple_roots_fund(self) -> tuple[tuple[int, ...], ...]:
        a = self.cartan_matrix
        return tuple(tuple(a[i][j] for i in range(self.rank)) for j in range(self.rank))

    @property
    def simple_roots(self) -> list[Weight]:
        return [self.fund(*r) for r in self.simple_roots_fund]

    @property
    def fundamental_weights(self) -> list[Weight]:
        return [self.fund(*[int(i == j) for i in range(self.rank)]) for j in range(self.rank)]

    @property
    def simple_coroots(self) -> list[Coroot]:
        return [Coroot(tuple(int(i == j) for i in range(self.rank))) for j in range(self.rank)]

    @cached_property
    def positive_roots_fund(self) -> tuple[tuple[int, ...], ...]:
        cols = self.simple_roots_fund
        return tuple(
            tuple(sum(c[j] * cols[j][i] for j in range(self.rank)) for i in range(self.rank))
            for c in self.positive_roots_root
        )

    def root_norm(self, c) -> Fraction:
        """(beta, beta) for beta given in simple-root coordinates."""
        a, d = self.cartan_matrix, self.root_lengths
        return sum((c[i] * c[j] * a[i][j] * d[i] / 2 for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    @cached_property
    def positive_coroots(self) -> tuple[Coroot, ...]:
        out = []
        for c in self.positive_roots_root:
            n = self.root_norm(c)
            coeffs = [c[i] * self.root_lengths[i] / n for i in range(self.rank)]
            assert all(q.denominator == 1 for q in coeffs)
            out.append(Coroot(tuple(int(q) for q in coeffs)))
        return tuple(out)

    @cached_property
    def coroot_root_pairs(self):
        """(coroot, root in fundamental coords) for each positive root."""
        return tuple(zip(self.positive_coroots, self.positive_roots_fund))

    @cached_property
    def rho_fund(self) -> tuple[int, ...]:
        return (1,) * self.rank

    @cached_property
    def fund_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Inner products (varpi_i, varpi_j)."""
        bt = tuple(zip(*self.basis))
        return _matmul(_matmul(bt, self.gram), self.basis)

    def inner_fund(self, x, y) -> Fraction:
        g = self.fund_gram
        return sum((x[i] * g[i][j] * y[j] for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    @cached_property
    def longest_element(self) -> WeylElem:
        return max(self.weyl_group, key=lambda w: w.length)

    @cached_property
    def highest_coroot(self) -> Coroot:
        return max(self.positive_coroots, key=lambda c: sum(c.coeffs))

    # --- reflections in fundamental coordinates ----------------------
    def reflect_fund(self, x, coroot: Coroot, root_fund):
        t = coroot(x)
        return tuple(xi - t * ri for xi, ri in zip(x, root_fund))

    def simple_reflect_fund(self, x, i):
        xi = x[i]
        return tuple(a - xi * r for a, r in zip(x, self.simple_roots_fund[i]))


def _validate_cartan(a) -> tuple[tuple[int, ...], ...]:
    try:
        a = tuple(tuple(int(x) for x in row) for row in a)
    except (TypeError, ValueError):
        raise RootSystemError("Cartan matrix must be an integer matrix") from None
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise RootSystemError("Cartan matrix must be square and nonempty")
    for i in range(n):
        if a[i][i] != 2:
            raise RootSystemError("Cartan matrix must have 2 on the diagonal")
        for j in range(n):
            if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                raise RootSystemError("invalid off-diagonal Cartan entries")
    return a


def _symmetrizer(a) -> tuple[Fraction, ...]:
    """Root lengths (alpha_i, alpha_i) making d_i a_ij symmetric; shortest = 2."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and a[i][j] != 0:
                    val = d[i] * a[i][j] / a[j][i]
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise RootSystemError("Cartan matrix is not symmetrizable")
    lo = min(d)
    return tuple(2 * x / lo for x in d)


def _check_finite_type(a, lengths):
    n = len(a)
    sym = [[a[i][j] * lengths[i] / 2 for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if _det([row[:k] for row in sym[:k]]) <= 0:
            raise RootSystemError("Cartan matrix is not of finite type")


def _positive_roots(a, cap=2000):
    n = len(a)
    simple = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for c in frontier:
            # <alpha_i^v, beta> = sum_j c_j a_ij
            for i in range(n):
                p = sum(c[j] * a[i][j] for j in range(n))
                r = tuple(c[k] - (p if k == i else 0) for k in range(n))
                if any(x < 0 for x in r) or r in roots or all(x == 0 for x in r):
                    continue
                roots.add(r)
                new.append(r)
                if len(roots) > cap:
                    raise RootSystemError("root system too large")
        frontier = new
    return tuple(sorted(roots, key=lambda c: (sum(c), c)))


def _weyl_group(a, basis, basis_inv, cap):
    n = len(a)
    cols = [tuple(a[i][j] for i in range(n)) for j in range(n)]
    gens = []
    for i in range(n):
        m = [[int(r == c) for c in range(n)] for r in range(n)]
        for r in range(n):
            m[r][i] -= cols[i][r]
        gens.append(tuple(map(tuple, m)))
    ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    seen = {ident: ()}
    frontier = [ident]
    while frontier:
        new = []
        for m in frontier:
            for i, g in enumerate(gens):
                prod = tuple(tuple(sum(g[r][k] * m[k][c] for k in range(n)) for c in range(n)) for r in range(n))
                if prod not in seen:
                    seen[prod] = (i,) + seen[m]
                    new.append(prod)
                    if len(seen) > cap:
                        raise RootSystemError(f"Weyl group exceeds cap of {cap} elements")
        frontier = new
    out = []
    for m, word in seen.items():
        amb = _matmul(_matmul(basis, m), basis_inv)
        out.append(WeylElem(m, amb, word))
    out.sort(key=lambda w: (w.length, w.word))
    return tuple(out)


def build_root_system(spec, cap: int = WEYL_GROUP_CAP) -> RootSystemData:
    """Build a root system from a built-in id (A1, A2, C2, G2) or a Cartan matrix."""
    if isinstance(spec, RootSystemData):
        return spec
    if isinstance(spec, str):
        key = spec.strip().upper()
        if key not in BUILTIN_CARTAN:
            raise RootSystemError(f"unsupported root system {spec!r}; built-ins are {sorted(BUILTIN_CARTAN)}")
        return _builtin(key, cap)
    a = _validate_cartan(spec)
    lengths = _symmetrizer(a)
    _check_finite_type(a, lengths)
    return _from_cartan("custom", a, None, None, cap)


_BUILTIN_CACHE: dict[tuple[str, int], RootSystemData] = {}


def _builtin(key, cap):
    if (key, cap) in _BUILTIN_CACHE:
        return _BUILTIN_CACHE[(key, cap)]
    a = BUILTIN_CARTAN[key]
    if key == "C2":
        basis = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(1)))
        gram = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    elif key == "A1":
        basis = ((Fraction(1),),)
        gram = ((Fraction(1),),)
    else:
        basis = gram = None
    rs = _from_cartan(key, a, basis, gram, cap)
    _BUILTIN_CACHE[(key, cap)] = rs
    return rs


def _from_cartan(ident, a, basis, gram, cap):
    n = len(a)
    lengths = _symmetrizer(a)
    if basis is None:
        # ambient = simple-root coordinates; varpi_j = sum_i (A^-1)_{ij} alpha_i
        ainv = _inverse(a)
        # columns of A are alpha_j in fund coords, so fund -> root coords is A^-1
        basis = ainv
        gram = tuple(tuple(Fraction(a[i][j]) * lengths[i] / 2 for j in range(n)) for i in range(n))
    basis = tuple(tuple(Fraction(x) for x in row) for row in basis)
    gram = tuple(tuple(Fraction(x) for x in row) for row in gram)
    binv = _inverse(basis)
    pos = _positive_roots(a)
    weyl = _weyl_group(a, basis, binv, cap)
    return RootSystemData(ident, tuple(map(tuple, a)), basis, gram, _ambient_lengths(a, basis, gram), pos, weyl)


def _ambient_lengths(a, basis, gram):
    n = len(a)
    out = []
    for j in range(n):
        root_fund = [a[i][j] for i in range(n)]
        amb = _matvec(basis, root_fund)
        out.append(sum((amb[r] * gram[r][c] * amb[c] for r in range(n) for c in range(n)), Fraction(0)))
    return tuple(out)


# ---------------------------------------------------------------------
# operations


def pair(rs: RootSystemData, f: Coroot, v) -> Fraction:
    """Value of a coroot functional at a weight."""
    return f(rs.fund_of(v))


def is_dominant_fund(x) -> bool:
    return all(c >= 0 for c in x)


def dominate_fund(rs: RootSystemData, x):
    """Return (dominant u, word) with s_word(x) = u, applying reflections in order."""
    x = tuple(x)
    word = []
    while True:
        for i, c in enumerate(x):
            if c < 0:
                x = rs.simple_reflect_fund(x, i)
                word.append(i)
                break
        else:
            return x, tuple(word)


def dominate_sign_fund(rs: RootSystemData, x):
    """Dominant representative and the parity of reflections used (+1/-1)."""
    x = tuple(x)
    sign = 1
    cols = rs.simple_roots_fund
    n = len(x)
    while True:
        for i in range(n):
            c = x[i]
            if c < 0:
                r = cols[i]
                x = tuple(x[k] - c * r[k] for k in range(n))
                sign = -sign
                break
        else:
            return x, sign


def is_dominant(rs: RootSystemData, v) -> bool:
    return is_dominant_fund(rs.fund_of(v))


def _elem_for_word(rs, word) -> WeylElem:
    n = rs.rank
    m = [[int(r == c) for c in range(n)] for r in range(n)]
    for i in word:
        x_cols = []
        for c in range(n):
            col = [m[r][c] for r in range(n)]
            x_cols.append(rs.simple_reflect_fund(col, i))
        m = [[x_cols[c][r] for c in range(n)] for r in range(n)]
    key = tuple(tuple(row) for row in m)
    return _weyl_index(rs)[key]


def _weyl_index(rs):
    idx = rs.__dict__.get("_weyl_index")
    if idx is None:
        idx = {w.fund_matrix: w for w in rs.weyl_group}
        rs.__dict__["_weyl_index"] = idx
    return idx


def dominate(rs: RootSystemData, v) -> tuple[Weight, WeylElem]:
    """(u, w) with u dominant and w(v) = u."""
    u, word = dominate_fund(rs, rs.fund_of(v))
    return rs.fund(*u), _elem_for_word(rs, word)


def weyl_act(rs: RootSystemData, w: WeylElem, v) -> Weight:
    return rs.fund(*w.act_fund(rs.fund_of(v)))


def contragredient_fund(rs: RootSystemData, x):
    w0 = rs.longest_element
    return tuple(-c for c in w0.act_fund(x))


def contragredient(rs: RootSystemData, v) -> Weight:
    """v* = w0(-v); only defined on the dominant chamber."""
    x = rs.fund_of(v)
    if not is_dominant_fund(x):
        raise RootSystemError("contragredient is only defined for dominant weights")
    return rs.fund(*contragredient_fund(rs, x))


def in_root_lattice_fund(rs: RootSystemData, x) -> bool:
    inv = rs.__dict__.get("_cartan_inv")
    if inv is None:
        inv = _inverse(rs.cartan_matrix)
        rs.__dict__["_cartan_inv"] = inv
    if any(Fraction(c).denominator != 1 for c in x):
        return False
    # fund coords x = A c with c the simple-root coordinates
    c = _matvec(inv, x)
    return all(q.denominator == 1 for q in c)


def lattice_member(rs: RootSystemData, v, which: str = "weight") -> bool:
    x = rs.fund_of(v)
    if which == "weight":
        return all(q.denominator == 1 for q in x)
    if which == "root":
        return in_root_lattice_fund(rs, x)
    raise ValueError(f"unknown lattice {which!r}")


def root_lattice_index(rs: RootSystemData) -> int:
    return abs(int(_det(rs.cartan_matrix)))


def orbit_fund(rs: RootSystemData, x) -> list[tuple]:
    x = tuple(x)
    seen = {x}
    frontier = [x]
    while frontier:
        new = []
        for y in frontier:
            for i in range(rs.rank):
                if y[i] != 0:
                    z = rs.simple_reflect_fund(y, i)
                    if z not in seen:
                        seen.add(z)
                        new.append(z)
        frontier = new
    return sorted(seen)


def weyl_orbit(rs: RootSystemData, v) -> set[Weight]:
    return {rs.fund(*y) for y in orbit_fund(rs, rs.fund_of(v))}


def denominators_lcm(xs: Iterable[Fraction]) -> int:
    out = 1
    for q in xs:
        out = lcm(out, Fraction(q).denominator)
    return out
