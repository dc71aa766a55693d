"""Finite Fourier analysis on filtered p-group models and subring counts.

The transform half works on an explicit F_p-vector space carrying a
nondegenerate pairing and a chain of nested subspaces whose orthogonal
complements run the chain backwards.  Values live in Q(zeta_p), held
exactly as coefficient vectors, so transform identities are checked by
equality and never by epsilon.

The counting half is about finite-index subrings of a cubic ring over
the p-adic integers.  It deliberately keeps three routes to the same
numbers apart: a closed-form count assembled per splitting type, a
power-series expansion of a rational generating function, and a brute
force walk over Hermite-form sublattices of a concrete ring given by
structure constants.  Tests play the routes against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian

from .cubic import ring_multiply, ring_structure, ring_trace
from .errors import BadParams, NotARing
from .forms import BinaryForm
from .intmath import is_prime

# ---------------------------------------------------------------------------
# exact cyclotomic values


@dataclass(frozen=True)
class CycValue:
    """Element of Q(zeta_p) as rational coefficients of 1, zeta, ...

    The vector has length p and is canonicalized against the relation
    1 + zeta + ... + zeta^(p-1) = 0 by forcing the last coefficient to
    zero.  Equality is then structural.  For p = 2 every value is
    rational and the canonical tail is always zero.
    """

    p: int
    coeffs: tuple

    @staticmethod
    def make(p: int, raw) -> "CycValue":
        vals = [Fraction(v) for v in raw]
        if p < 2 or len(vals) != p:
            raise BadParams("need one coefficient per power of zeta, p >= 2")
        last = vals[-1]
        if last:
            vals = [v - last for v in vals]
        return CycValue(p, tuple(vals))

    @staticmethod
    def from_rational(p: int, value) -> "CycValue":
        return CycValue.make(p, [value] + [0] * (p - 1))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise BadParams(f"not a rational value: {self.coeffs}")
        return self.coeffs[0]

    def conj(self) -> "CycValue":
        out = [Fraction(0)] * self.p
        for k, v in enumerate(self.coeffs):
            out[-k % self.p] += v
        return CycValue.make(self.p, out)

    def _coerced(self, other):
        if isinstance(other, CycValue):
            if other.p != self.p:
                raise BadParams("mixed zeta orders")
            return other
        return CycValue.from_rational(self.p, other)

    def __add__(self, other):
        o = self._coerced(other)
        return CycValue.make(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycValue(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerced(other))

    def __mul__(self, other):
        o = self._coerced(other)
        out = [Fraction(0)] * self.p
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[(i + j) % self.p] += a * b
        return CycValue.make(self.p, out)

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)


# ---------------------------------------------------------------------------
# small linear algebra mod p


def _echelon(rows: list, p: int) -> list:
    """Row echelon form over F_p; returns the nonzero rows."""
    rows = [list(r) for r in rows]
    out = []
    cols = len(rows[0]) if rows else 0
    lead = 0
    for col in range(cols):
        pivot = next((i for i in range(lead, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[lead], rows[pivot] = rows[pivot], rows[lead]
        inv = pow(rows[lead][col], -1, p)
        rows[lead] = [(x * inv) % p for x in rows[lead]]
        for i in range(len(rows)):
            if i != lead and rows[i][col] % p:
                c = rows[i][col] % p
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[lead])]
        lead += 1
        if lead == len(rows):
            break
    return [r for r in rows if any(v % p for v in r)]


def _rank(rows, p: int) -> int:
    if not rows:
        return 0
    return len(_echelon(rows, p))


def _in_span(rows, vec, p: int) -> bool:
    if not any(v % p for v in vec):
        return True
    if not rows:
        return False
    return _rank(list(rows), p) == _rank(list(rows) + [list(vec)], p)


@lru_cache(maxsize=None)
def _vector_space(p: int, dims: int) -> tuple:
    return tuple(_cartesian(range(p), repeat=dims))


@lru_cache(maxsize=None)
def _span_members(p: int, basis: tuple, dims: int) -> frozenset:
    if not basis:
        return frozenset({(0,) * dims})
    out = set()
    for coeffs in _cartesian(range(p), repeat=len(basis)):
        v = [0] * dims
        for c, b in zip(coeffs, basis):
            for k in range(dims):
                v[k] = (v[k] + c * b[k]) % p
        out.add(tuple(v))
    return frozenset(out)


# ---------------------------------------------------------------------------
# filtered groups and the transform


@dataclass(frozen=True)
class FilteredGroup:
    """F_p-space with a pairing and a chain of subspaces dual in pairs.

    levels[i] holds a basis of the i-th subspace; the chain is nested
    and runs from index 0 down to index e = len(levels) - 1.  The
    whole space and the zero space sit outside the chain as silent
    endpoints.  Construction validates that the pairing matrix is
    nondegenerate mod p, that level sizes follow h0 * q^(e-i) for one
    prime power q, and that the complement of level i under the
    pairing is exactly level e-i.
    """

    p: int
    dims: int
    pairing: tuple
    levels: tuple
    h0: int

    def __post_init__(self):
        p, n = self.p, self.dims
        if not is_prime(p):
            raise BadParams("p must be prime")
        if n < 0:
            raise BadParams("negative dimension")
        if len(self.pairing) != n or any(len(row) != n for row in self.pairing):
            raise BadParams("pairing matrix must be dims x dims")
        if any(x % p != x for row in self.pairing for x in row):
            raise BadParams("pairing entries must be reduced mod p")
        if _rank(list(self.pairing), p) != n:
            raise BadParams("pairing is degenerate")
        if not self.levels:
            raise BadParams("need at least one level")
        a = _power_exponent(self.h0, p)
        if a is None:
            raise BadParams(f"inconsistent sizes: h0 = {self.h0} is not a power of {p}")
        dims_chain = []
        for basis in self.levels:
            for v in basis:
                if len(v) != n or any(x % p != x for x in v):
                    raise BadParams("level basis vector out of range")
            if _rank(list(basis), p) != len(basis):
                raise BadParams("level basis is dependent")
            dims_chain.append(len(basis))
        e = len(self.levels) - 1
        if dims_chain[e] != a:
            raise BadParams(
                f"inconsistent sizes: last level has {p}^{dims_chain[e]} elements, h0 = {self.h0}"
            )
        if e:
            f_deg, rem = divmod(dims_chain[0] - dims_chain[e], e)
            if rem or f_deg < 1:
                raise BadParams("inconsistent sizes: level dimensions are not an arithmetic chain")
            for i, dim_i in enumerate(dims_chain):
                if dim_i != a + f_deg * (e - i):
                    raise BadParams("inconsistent sizes: level dimension off the chain")
        if n != 2 * a + (dims_chain[0] - dims_chain[e]):
            raise BadParams("inconsistent sizes: dims incompatible with h0 and the chain")
        for i in range(e + 1):
            upper = self.levels[i]
            for v in self.levels[i + 1] if i < e else ():
                if not _in_span(upper, v, p):
                    raise BadParams("levels are not nested")
            partner = self.levels[e - i]
            if len(upper) + len(partner) != n:
                raise BadParams("perp dimensions do not add up")
            for u in upper:
                for w in partner:
                    if self.pair(u, w):
                        raise BadParams("levels are not dual in pairs under the pairing")

    # -- basic geometry ----------------------------------------------------

    @property
    def e(self) -> int:
        return len(self.levels) - 1

    @property
    def size(self) -> int:
        return self.p ** self.dims

    def elements(self) -> tuple:
        return _vector_space(self.p, self.dims)

    def index_of(self, v) -> int:
        idx = 0
        for x in v:
            idx = idx * self.p + x
        return idx

    def neg(self, v) -> tuple:
        return tuple((-x) % self.p for x in v)

    def pair(self, x, y) -> int:
        p = self.p
        total = 0
        for i, xi in enumerate(x):
            if xi:
                row = self.pairing[i]
                total += xi * sum(row[j] * y[j] for j in range(self.dims))
        return total % p

    def level_size(self, i: int) -> int:
        return self.p ** len(self.levels[i])

    def level_scale(self, i: int) -> int:
        """|level i| / h0, the prime power q^(e-i)."""
        return self.level_size(i) // self.h0

    def level_members(self, i: int) -> frozenset:
        return _span_members(self.p, self.levels[i], self.dims)

    def level_indicator(self, i: int) -> "LevelFunction":
        members = self.level_members(i)
        one, zero = Fraction(1), Fraction(0)
        return LevelFunction(tuple(one if v in members else zero for v in self.elements()))


@dataclass(frozen=True)
class LevelFunction:
    """Dense table of exact values over the lexicographic group order.

    Entries are Fractions, or CycValue when a transform lands off the
    rational line.  The table length must match the group it is used
    with; that is checked at transform time, since the table itself
    does not carry the group.
    """

    table: tuple

    def __post_init__(self):
        cleaned = tuple(
            v if isinstance(v, (Fraction, CycValue)) else Fraction(v) for v in self.table
        )
        object.__setattr__(self, "table", cleaned)


def fourier(f: LevelFunction, G: FilteredGroup) -> LevelFunction:
    """Transform with the 1/h0 normalization.

    out(beta) = (1/h0) * sum over alpha of zeta^pair(alpha, beta) * f(alpha).
    Applying it twice gives (|H|/h0^2) times the reflection of f, so
    with |H| = h0^2 * q^e the double transform scales by exactly q^e.
    Entries whose value is rational come back as Fractions.
    """
    els = G.elements()
    if len(f.table) != len(els):
        raise BadParams("table length does not match the group size")
    p = G.p
    vecs = []
    for v in f.table:
        if isinstance(v, CycValue):
            if v.p != p:
                raise BadParams("mixed zeta orders")
            vecs.append(v.coeffs)
        else:
            vecs.append((v,) + (Fraction(0),) * (p - 1))
    n = G.dims
    out = []
    for beta in els:
        against = [sum(G.pairing[i][j] * beta[j] for j in range(n)) % p for i in range(n)]
        acc = [Fraction(0)] * p
        for alpha, vec in zip(els, vecs):
            c = sum(a * w for a, w in zip(alpha, against)) % p
            for k in range(p):
                if vec[k]:
                    acc[(k + c) % p] += vec[k]
        val = CycValue.make(p, [a / G.h0 for a in acc])
        out.append(val.as_fraction() if val.is_rational() else val)
    return LevelFunction(tuple(out))


def _power_exponent(m: int, p: int):
    """a with m = p^a, else None."""
    if m < 1:
        return None
    a = 0
    while m % p == 0:
        m //= p
        a += 1
    return a if m == 1 else None


def make_filtered_group(p: int, f_deg: int, e: int, h0: int) -> FilteredGroup:
    """Deterministic model: antidiagonal pairing, prefix-coordinate levels.

    With q = p^f_deg and h0 = p^a the sizes are forced by the duality
    requirements: the space has dimension 2a + f_deg*e (so its size is
    h0^2 * q^e), and level i spans the first a + f_deg*(e-i)
    coordinates.  The complement of a coordinate prefix under the
    antidiagonal pairing is again a coordinate prefix, which is what
    makes the level chain self-dual in pairs.
    """
    if not is_prime(p):
        raise BadParams("p must be prime")
    if f_deg < 1 or e < 0:
        raise BadParams("need f_deg >= 1 and e >= 0")
    a = _power_exponent(h0, p)
    if a is None:
        raise BadParams(f"inconsistent sizes: h0 = {h0} is not a power of {p}")
    n = 2 * a + f_deg * e
    pairing = tuple(
        tuple(1 if i + j == n - 1 else 0 for j in range(n)) for i in range(n)
    )
    unit = [0] * n

    def prefix(k):
        rows = []
        for i in range(k):
            row = unit[:]
            row[i] = 1
            rows.append(tuple(row))
        return tuple(rows)

    levels = tuple(prefix(a + f_deg * (e - i)) for i in range(e + 1))
    return FilteredGroup(p, n, pairing, levels, h0)


# ---------------------------------------------------------------------------
# closed-form subring counts

SUBRING_TYPES = ("111", "12", "3", "1^21", "1^3")

_UNRAMIFIED = ("111", "12", "3")


@dataclass(frozen=True)
class SubringParams:
    """Inputs for the closed-form count of traced subrings.

    sigma is the splitting type of the ambient cubic ring over Z_p,
    d0 the valuation of its discriminant, d the valuation asked of the
    subring discriminant, t the demanded trace-ideal depth, q the
    residue field size, and e the base ramification index (1 for work
    over Z).  d must agree with d0 in parity since an index-p^k
    subring shifts the discriminant valuation by 2k.
    """

    sigma: str
    d0: int
    d: int
    t: int
    q: int
    e: int = 1

    def __post_init__(self):
        if self.sigma not in SUBRING_TYPES:
            raise BadParams(f"unknown splitting type {self.sigma!r}")
        base = _smallest_prime_factor(self.q)
        if self.q < 2 or base is None or _power_exponent(self.q, base) is None:
            raise BadParams("q must be a prime power")
        if self.d0 < 0:
            raise BadParams("negative d0")
        if self.sigma in _UNRAMIFIED and self.d0 != 0:
            raise BadParams(f"splitting type {self.sigma} forces d0 = 0")
        if self.sigma not in _UNRAMIFIED and self.d0 < 1:
            raise BadParams(f"splitting type {self.sigma} needs d0 >= 1")
        if self.d < self.d0:
            raise BadParams("d below the discriminant valuation of the maximal order")
        if (self.d - self.d0) % 2:
            raise BadParams("d must match d0 in parity")
        if self.e < 0 or not 0 <= self.t <= self.e:
            raise BadParams("need 0 <= t <= e")


def _smallest_prime_factor(n: int):
    if n < 2:
        return None
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _geometric(q: int, r: int) -> int:
    """1 + q + ... + q^(r-1); zero when r <= 0."""
    return (q ** r - 1) // (q - 1) if r > 0 else 0


def _count_ramified_core(d0: int, d: int, t: int, q: int) -> int:
    """Orders in the totally ramified cubic field shape."""
    if d < 3 * t:
        r = 0
    elif d <= 6 * t - d0:
        r = d // 3 - t + 1
    else:
        r = (d - d0) // 6 + 1
    return _geometric(q, r)


def _count_inert_core(d: int, t: int, q: int) -> int:
    """Orders in the unramified cubic field shape (d0 = 0, d even)."""
    if d < 3 * t:
        r = 0
    elif d <= 6 * t:
        r = d // 3 - t + 1
    else:
        r = d // 2 - 2 * ((d + 5) // 6) + 1
    return _geometric(q, r)


def _count_radical_band(d0: int, d: int, t: int, q: int) -> int:
    """The extra band of orders present once the algebra has a
    quadratic or split part.  The exponent grows by one every sixth
    discriminant step past d0 and is floored at t."""
    r = max(t, -((d0 - d) // 6))
    return (q ** r - q ** t) // (q - 1)


def traced_subring_count(params: SubringParams) -> int:
    """Closed-form number of subrings with the asked discriminant
    valuation and trace depth, assembled per splitting type."""
    d0, d, t, q = params.d0, params.d, params.t, params.q
    if params.sigma == "1^3":
        return _count_ramified_core(d0, d, t, q)
    if params.sigma == "1^21":
        return _count_ramified_core(d0, d, t, q) + _count_radical_band(d0, d, t, q)
    if params.sigma == "3":
        return _count_inert_core(d, t, q)
    if params.sigma == "12":
        return _count_inert_core(d, t, q) + _count_radical_band(d0, d, t, q)
    return _count_inert_core(d, t, q) + 3 * _count_radical_band(d0, d, t, q)


_SERIES_NUMERATORS = {
    "111": (1, 2, 1),
    "12": (1, 0, 1),
    "3": (1, -1, 1),
    "1^21": (1, 1),
    "1^3": (1,),
}


def subring_series(sigma: str, d0: int, q: int, t: int, max_terms: int) -> tuple:
    """Table of (discriminant valuation, count) pairs.

    The untraced series is expanded from the rational generating
    function numerator over (1 - Z)(1 - q Z^3), a route that shares
    nothing with traced_subring_count.  The traced case t = 1 exists
    only through the closed forms (base ramification 1), so there the
    table is filled from those.
    """
    if max_terms < 0:
        raise BadParams("negative number of terms")
    if t not in (0, 1):
        raise BadParams("t must be 0 or 1")
    SubringParams(sigma, d0, d0, t, q)  # validates sigma, d0, q, t
    if t == 1:
        return tuple(
            (d0 + 2 * j, traced_subring_count(SubringParams(sigma, d0, d0 + 2 * j, 1, q)))
            for j in range(max_terms)
        )
    numerator = _SERIES_NUMERATORS[sigma]
    base = [_geometric(q, j // 3 + 1) for j in range(max_terms)]
    out = []
    for j in range(max_terms):
        a_j = sum(
            coeff * base[j - m] for m, coeff in enumerate(numerator) if m <= j
        )
        out.append((d0 + 2 * j, a_j))
    return tuple(out)


# ---------------------------------------------------------------------------
# brute-force sublattice oracle


def _checked_table(mult_table) -> tuple:
    try:
        table = tuple(
            tuple(tuple(int(x) for x in cell) for cell in row) for row in mult_table
        )
    except (TypeError, ValueError):
        raise NotARing("structure constants must be a 3x3x3 integer table")
    if len(table) != 3 or any(len(row) != 3 for row in table) or any(
        len(cell) != 3 for row in table for cell in row
    ):
        raise NotARing("structure constants must be a 3x3x3 integer table")
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for j in range(3):
        if table[0][j] != basis[j] or table[j][0] != basis[j]:
            raise NotARing("first basis vector must act as the identity")
    for i in range(3):
        for j in range(i):
            if table[i][j] != table[j][i]:
                raise NotARing("multiplication is not commutative")
    for i in range(3):
        for j in range(3):
            for k in range(3):
                left = ring_multiply(table, table[i][j], basis[k])
                right = ring_multiply(table, basis[i], table[j][k])
                if left != right:
                    raise NotARing("multiplication is not associative")
    if ring_disc(table, _validated=True) == 0:
        raise NotARing("degenerate trace form")
    return table


def ring_disc(mult_table, _validated: bool = False) -> int:
    """Determinant of the trace pairing on the given basis."""
    table = mult_table if _validated else tuple(
        tuple(tuple(cell) for cell in row) for row in mult_table
    )
    gram = [
        [ring_trace(table, table[i][j]) for j in range(3)] for i in range(3)
    ]
    (a, b, c), (d, e, f), (g, h, i) = gram
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def subring_oracle(mult_table, p: int, k: int, t: int = 0) -> int:
    """Count index-p^k sublattices containing 1 that are closed under
    multiplication and whose traces all lie in p^t Z.

    A sublattice containing 1 splits off the first coordinate, so the
    Hermite forms to try are spanned by 1, (0, m, c), (0, 0, mm) with
    m * mm = p^k and 0 <= c < mm.  Closure is checked on the three
    pairwise products of the non-unit generators.
    """
    table = _checked_table(mult_table)
    if not is_prime(p):
        raise BadParams("p must be prime")
    if k < 0:
        raise BadParams("negative index exponent")
    if t != 0 and (t != 1 or p != 3):
        raise BadParams("trace depth beyond 0 is only meaningful at p = 3")
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    traces = [ring_trace(table, b) for b in basis]
    pt = p ** t
    count = 0
    for split in range(k + 1):
        m = p ** split
        mm = p ** (k - split)
        for c in range(mm):
            u = (0, m, c)
            v = (0, 0, mm)
            if (m * traces[1] + c * traces[2]) % pt or (mm * traces[2]) % pt:
                continue
            if traces[0] % pt:
                continue

            def inside(x):
                if x[1] % m:
                    return False
                return (x[2] - (x[1] // m) * c) % mm == 0

            if not inside(ring_multiply(table, u, u)):
                continue
            if not inside(ring_multiply(table, u, v)):
                continue
            if not inside(ring_multiply(table, v, v)):
                continue
            count += 1
    return count


# ---------------------------------------------------------------------------
# fixture rings, one per splitting type and small prime

# quadratic companions y^2 = u*y + v: x^2 - x - 1 (discriminant 5) stays
# irreducible mod 2 and mod 3; x^2 - 2 (discriminant 8) does mod 5.
_INERT_QUADRATIC = {2: (1, 1), 3: (1, 1), 5: (0, 2)}

# y^2 = p ramifies at p; the order Z[sqrt(p)] is p-maximal.
_RAMIFIED_QUADRATIC = {2: (0, 2), 3: (0, 3), 5: (0, 5)}

# monic cubics x^3 + c2 x^2 + c1 x + c0 with no root mod p:
# x^3 - x - 1 (discriminant -23) mod 2 and mod 3, x^3 - x + 2
# (discriminant -104) mod 5.
_INERT_CUBIC = {2: (0, -1, -1), 3: (0, -1, -1), 5: (0, -1, 2)}


def _split_ring() -> tuple:
    e0 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    return (
        e0,
        ((0, 1, 0), (0, 1, 0), (0, 0, 0)),
        ((0, 0, 1), (0, 0, 0), (0, 0, 1)),
    )


def _with_quadratic(u: int, v: int) -> tuple:
    """Z x Z[y]/(y^2 - u y - v) on the basis 1, (1, 0), (0, y)."""
    e0 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    return (
        e0,
        ((0, 1, 0), (0, 1, 0), (0, 0, 0)),
        ((0, 0, 1), (0, 0, 0), (v, -v, u)),
    )


def fixture_ring(sigma: str, p: int) -> tuple:
    """Structure constants of a ring over Z whose localization at p is
    maximal with the asked splitting type.  Available for p in
    {2, 3, 5}."""
    if sigma not in SUBRING_TYPES:
        raise BadParams(f"unknown splitting type {sigma!r}")
    if not is_prime(p):
        raise BadParams("p must be prime")
    try:
        if sigma == "111":
            return _split_ring()
        if sigma == "12":
            return _with_quadratic(*_INERT_QUADRATIC[p])
        if sigma == "1^21":
            return _with_quadratic(*_RAMIFIED_QUADRATIC[p])
        if sigma == "3":
            return ring_structure(BinaryForm((1,) + _INERT_CUBIC[p]))
        return ring_structure(BinaryForm((1, 0, 0, -p)))
    except KeyError:
        raise BadParams(f"no fixture for splitting type {sigma} at p = {p}")
