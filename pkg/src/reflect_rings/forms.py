"""Integral binary forms and the unimodular substitution action.

Conventions used everywhere in this package:

* a form of degree n is f(x, y) = sum_i coeffs[i] * x^(n-i) * y^i, so
  coeffs[0] multiplies x^n and coeffs[-1] multiplies y^n;
* a matrix gamma = (p, q, r, s) with ps - qr = +-1 acts on the right by
  substitution, act(f, gamma)(x, y) = f(px + qy, rx + sy), and with the
  usual matrix product this satisfies act(act(f, g1), g2) = act(f, g1 @ g2).

Degenerate leading coefficients are allowed: a quadratic may be stored as a
cubic with a = 0, and a cubic as a quartic.  Projective conventions (roots
in P^1, the point at infinity included) keep those cases honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

from .errors import BadInput, ZeroDiscriminant


@dataclass(frozen=True)
class Unimodular:
    """2x2 integer matrix with determinant +1 or -1."""

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self) -> None:
        if self.p * self.s - self.q * self.r not in (1, -1):
            raise BadInput(f"matrix {self.entries()} has determinant != +-1")

    def entries(self) -> tuple[int, int, int, int]:
        return (self.p, self.q, self.r, self.s)

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    def __matmul__(self, other: "Unimodular") -> "Unimodular":
        return Unimodular(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    def inverse(self) -> "Unimodular":
        d = self.det
        # adjugate over det, and det is +-1 so this stays integral
        return Unimodular(d * self.s, -d * self.q, -d * self.r, d * self.p)

    def __neg__(self) -> "Unimodular":
        return Unimodular(-self.p, -self.q, -self.r, -self.s)


IDENTITY = Unimodular(1, 0, 0, 1)


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 3 <= len(self.coeffs) <= 5:
            raise BadInput("only degrees 2, 3, 4 are supported")
        if not any(self.coeffs):
            raise BadInput("the zero form is not allowed")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int, y: int) -> int:
        n = self.degree
        return sum(c * x ** (n - i) * y**i for i, c in enumerate(self.coeffs))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __str__(self) -> str:
        n = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = _monomial(n - i, i)
            if c == 1 and mono:
                parts.append(f"+ {mono}")
            elif c == -1 and mono:
                parts.append(f"- {mono}")
            elif c >= 0:
                parts.append(f"+ {c}{mono}")
            else:
                parts.append(f"- {-c}{mono}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else ("-" + text[2:])


def _monomial(i: int, j: int) -> str:
    xs = {0: "", 1: "x", 2: "x^2", 3: "x^3", 4: "x^4"}[i]
    ys = {0: "", 1: "y", 2: "y^2", 3: "y^3", 4: "y^4"}[j]
    return xs + ys


def form(*coeffs: int) -> BinaryForm:
    """Shorthand constructor, form(a, b, c, ...)."""
    return BinaryForm(tuple(int(c) for c in coeffs))


def _linear_power(u: int, v: int, k: int) -> list[int]:
    # coefficient list of (u x + v y)^k in the x^(k-j) y^j ordering
    return [comb(k, j) * u ** (k - j) * v**j for j in range(k + 1)]


def act(f: BinaryForm, g: Unimodular) -> BinaryForm:
    """Right substitution action, act(f, g)(x, y) = f(px+qy, rx+sy)."""
    n = f.degree
    out = [0] * (n + 1)
    for i, ci in enumerate(f.coeffs):
        if ci == 0:
            continue
        left = _linear_power(g.p, g.q, n - i)
        right = _linear_power(g.r, g.s, i)
        for j, lv in enumerate(left):
            if lv == 0:
                continue
            for k, rv in enumerate(right):
                out[j + k] += ci * lv * rv
    return BinaryForm(tuple(out))


def disc(f: BinaryForm) -> int:
    """Discriminant of a binary form of degree 2, 3 or 4."""
    if f.degree == 2:
        a, b, c = f.coeffs
        return b * b - 4 * a * c
    if f.degree == 3:
        a, b, c, d = f.coeffs
        return (
            b * b * c * c
            - 4 * a * c**3
            - 4 * b**3 * d
            - 27 * a * a * d * d
            + 18 * a * b * c * d
        )
    a, b, c, d, e = f.coeffs
    return (
        256 * a**3 * e**3
        - 192 * a**2 * b * d * e**2
        - 128 * a**2 * c**2 * e**2
        + 144 * a**2 * c * d**2 * e
        - 27 * a**2 * d**4
        + 144 * a * b**2 * c * e**2
        - 6 * a * b**2 * d**2 * e
        - 80 * a * b * c**2 * d * e
        + 18 * a * b * c * d**3
        + 16 * a * c**4 * e
        - 4 * a * c**3 * d**2
        - 27 * b**4 * e**2
        + 18 * b**3 * c * d * e
        - 4 * b**3 * d**3
        - 4 * b**2 * c**3 * e
        + b**2 * c**2 * d**2
    )


def superdiscriminant(f: BinaryForm) -> int:
    """a * (b^2 - 4ac), the translation invariant of a quadratic."""
    if f.degree != 2:
        raise BadInput("superdiscriminant is defined for degree 2")
    a, b, c = f.coeffs
    return a * (b * b - 4 * a * c)


def hessian(f: BinaryForm) -> tuple[int, int, int]:
    """Half-Hessian (P, Q, R) = (b^2 - 3ac, bc - 9ad, c^2 - 3bd) of a cubic.

    Its discriminant Q^2 - 4PR equals -3 disc(f), so it is positive
    definite exactly when disc(f) > 0 (taking the sign with P > 0).
    """
    if f.degree != 3:
        raise BadInput("hessian is defined for degree 3")
    a, b, c, d = f.coeffs
    return (b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)


@dataclass(frozen=True)
class MonicCubic:
    """g(y) = y^3 + g2 y^2 + g1 y + g0 with integer coefficients.

    Two monic cubics are shift equivalent when one is g(y + t) for an
    integer t; shift_key() is a complete invariant for that relation.
    """

    g2: int
    g1: int
    g0: int

    def __call__(self, y):
        return ((y + self.g2) * y + self.g1) * y + self.g0

    def disc(self) -> int:
        g2, g1, g0 = self.g2, self.g1, self.g0
        return (
            18 * g2 * g1 * g0
            - 4 * g2**3 * g0
            + g2 * g2 * g1 * g1
            - 4 * g1**3
            - 27 * g0 * g0
        )

    def shifted(self, t: int) -> "MonicCubic":
        """g(y + t)."""
        g2, g1, g0 = self.g2, self.g1, self.g0
        return MonicCubic(
            g2 + 3 * t,
            g1 + 2 * g2 * t + 3 * t * t,
            g0 + g1 * t + g2 * t * t + t**3,
        )

    def shift_key(self) -> tuple[int, int, int]:
        g2, g1, g0 = self.g2, self.g1, self.g0
        return (3 * g1 - g2 * g2, 2 * g2**3 - 9 * g2 * g1 + 27 * g0, g2 % 3)

    def rescaled(self, m: int) -> "MonicCubic":
        """m^3 * g(y/m), monic again; rescaled(4) mediates the supereven
        dictionary where resolvents pick up a factor 64."""
        return MonicCubic(m * self.g2, m * m * self.g1, m**3 * self.g0)

    def mirrored(self) -> "MonicCubic":
        """-g(-y), the resolvent of the negated quartic."""
        return MonicCubic(-self.g2, self.g1, -self.g0)

    def as_form(self) -> BinaryForm:
        return BinaryForm((1, self.g2, self.g1, self.g0))

    def __str__(self) -> str:
        parts = ["y^3"]
        for coeff, power in ((self.g2, "y^2"), (self.g1, "y"), (self.g0, "")):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if power and mag == 1:
                parts.append(f"{sign} {power}")
            elif power:
                parts.append(f"{sign} {mag}{power}")
            else:
                parts.append(f"{sign} {mag}")
        return " ".join(parts)


def quartic_resolvent(f: BinaryForm) -> MonicCubic:
    """The monic cubic y^3 - c y^2 + (bd - 4ae) y + (4ace - b^2 e - a d^2).

    Its discriminant equals disc(f), and resolvents of equivalent quartics
    agree up to an integer shift.
    """
    if f.degree != 4:
        raise BadInput("resolvent is defined for degree 4")
    a, b, c, d, e = f.coeffs
    return MonicCubic(-c, b * d - 4 * a * e, 4 * a * c * e - b * b * e - a * d * d)


SPLITTING_TAGS = ("111", "12", "3", "1^21", "1^3", "0")


def splitting_type(f: BinaryForm, p: int) -> str:
    """Factorization shape of a cubic form mod p over P^1(F_p).

    Tags: 111 (three simple roots), 12 (one root, irreducible quadratic),
    3 (irreducible), 1^21 (double plus simple root), 1^3 (triple root),
    0 (form vanishes identically mod p).
    """
    if f.degree != 3:
        raise BadInput("splitting types are defined for degree 3")
    cs = [c % p for c in f.coeffs]
    if not any(cs):
        return "0"
    mults = sorted(_projective_multiplicities(cs, p).values())
    return {(): "3", (1,): "12", (1, 1, 1): "111", (1, 2): "1^21", (3,): "1^3"}[
        tuple(mults)
    ]


def _projective_multiplicities(cs: list[int], p: int) -> dict:
    """Multiplicity of each root of a nonzero cubic in P^1(F_p).

    Points are (x0, 1) for finite roots and (1, 0) for the root at
    infinity, whose multiplicity is the degree drop of f(x, 1) mod p.
    """
    out = {}
    drop = 0
    while drop < 3 and cs[drop] == 0:
        drop += 1
    if drop:
        out[(1, 0)] = drop
    poly = cs[drop:]  # f(x,1) coefficients, leading first, degree 3-drop
    for x0 in range(p):
        m = 0
        cur = poly
        while cur and _eval_mod(cur, x0, p) == 0:
            cur = _deflate_mod(cur, x0, p)
            m += 1
        if m:
            out[(x0, 1)] = m
    return out


def _eval_mod(poly: list[int], x0: int, p: int) -> int:
    v = 0
    for c in poly:
        v = (v * x0 + c) % p
    return v


def _deflate_mod(poly: list[int], x0: int, p: int) -> list[int]:
    # synthetic division by (x - x0) mod p; caller guarantees x0 is a root
    out = []
    carry = 0
    for c in poly[:-1]:
        carry = (carry * x0 + c) % p
        out.append(carry)
    return out


def projective_root_count(f: BinaryForm, p: int) -> int:
    """Number of distinct roots of a cubic in P^1(F_p); p+1 if f = 0 mod p."""
    tag = splitting_type(f, p)
    return {"111": 3, "12": 1, "3": 0, "1^21": 2, "1^3": 1, "0": p + 1}[tag]


def stabilizer_order(f: BinaryForm) -> int:
    """Order of the stabilizer entering a nondegenerate form's class weight.

    For cubics this is the full GL_2(Z) stabilizer and the result divides
    6.  For quartics it is the proper (determinant +1) stabilizer, where
    -I acts trivially, so the order is even and divides 24.
    """
    if f.degree == 3:
        if disc(f) == 0:
            raise ZeroDiscriminant("stabilizers need disc != 0")
        from . import cubic

        return cubic.stabilizer_order(f)
    if f.degree == 4:
        if disc(f) == 0:
            raise ZeroDiscriminant("stabilizers need disc != 0")
        from . import quartic

        return quartic.stabilizer_order(f)
    raise BadInput("stabilizers are computed for degrees 3 and 4")


def reduce_cubic(f: BinaryForm) -> BinaryForm:
    """Canonical representative of the GL_2(Z) class of a cubic."""
    if f.degree != 3:
        raise BadInput("reduce_cubic needs degree 3")
    from . import cubic

    return cubic.reduce_cubic(f)
