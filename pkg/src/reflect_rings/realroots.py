"""Exact real-root tools: Sturm chains, isolation, signs of algebraic values.

Polynomials are tuples with the leading coefficient first; coefficients may
be ints or Fractions.  Everything here is exact, no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _strip(p):
    p = tuple(p)
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def degree(p) -> int:
    return len(_strip(p)) - 1  # -1 for the zero polynomial


def evaluate(p, x):
    v = Fraction(0)
    for c in p:
        v = v * x + c
    return v


def derivative(p):
    n = len(p) - 1
    return tuple(c * (n - i) for i, c in enumerate(p[:-1]))


def _polydiv(f, g):
    """Quotient and remainder over the rationals."""
    f = [Fraction(c) for c in _strip(f)]
    g = [Fraction(c) for c in _strip(g)]
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g) and f:
        k = len(f) - len(g)
        coef = f[0] / g[0]
        q[len(q) - 1 - k] = coef
        f = [a - coef * b for a, b in zip(f[1:], g[1:] + [Fraction(0)] * k)]
        f = list(_strip(f))
    return tuple(q), tuple(f)


def poly_gcd(f, g):
    """Monic gcd over the rationals (a constant for coprime inputs)."""
    a, b = _strip(f), _strip(g)
    while b:
        a, b = b, _polydiv(a, b)[1]
    if not a:
        return ()
    lead = Fraction(a[0])
    return tuple(Fraction(c) / lead for c in a)


def squarefree_part(p):
    p = _strip(p)
    if len(p) <= 1:
        return p
    g = poly_gcd(p, derivative(p))
    if len(g) <= 1:
        return p
    return _polydiv(p, g)[0]


def sturm_chain(p):
    chain = [_strip(p)]
    d = _strip(derivative(p))
    if d:
        chain.append(d)
        while True:
            rem = _polydiv(chain[-2], chain[-1])[1]
            if not rem:
                break
            chain.append(tuple(-c for c in rem))
    return chain


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain, x) -> int:
    return _variations([_sign(evaluate(p, x)) for p in chain])


def _variations_at_inf(chain, sgn: int) -> int:
    # sign of p at +/- infinity is the leading sign times parity for -inf
    vals = []
    for p in chain:
        lead = _sign(p[0])
        vals.append(lead if sgn > 0 or (len(p) - 1) % 2 == 0 else -lead)
    return _variations(vals)


def root_bound(p) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    p = _strip(p)
    lead = abs(Fraction(p[0]))
    m = max((abs(Fraction(c)) for c in p[1:]), default=Fraction(0))
    return 1 + m / lead


def count_real_roots(p, lo=None, hi=None) -> int:
    """Distinct real roots in (lo, hi]; None means the matching infinity."""
    sf = squarefree_part(p)
    if degree(sf) <= 0:
        return 0
    chain = sturm_chain(sf)
    vlo = _variations_at_inf(chain, -1) if lo is None else _variations_at(chain, lo)
    vhi = _variations_at_inf(chain, +1) if hi is None else _variations_at(chain, hi)
    return vlo - vhi


@dataclass
class RealRoot:
    """One real root of a squarefree polynomial, isolated in (lo, hi].

    lo == hi encodes an exact rational root.  Intervals only ever shrink,
    so bounds computed from an instance stay valid after refinement.
    """

    poly: tuple
    lo: Fraction
    hi: Fraction
    _chain: list = field(default_factory=list, repr=False)

    def _sturm(self):
        if not self._chain:
            self._chain = sturm_chain(self.poly)
        return self._chain

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def refine(self) -> None:
        if self.exact:
            return
        mid = (self.lo + self.hi) / 2
        if evaluate(self.poly, mid) == 0:
            self.lo = self.hi = mid
            return
        chain = self._sturm()
        if _variations_at(chain, self.lo) - _variations_at(chain, mid) == 1:
            self.hi = mid
        else:
            self.lo = mid

    def refine_below(self, width: Fraction) -> None:
        while not self.exact and self.hi - self.lo > width:
            self.refine()

    def compare(self, x) -> int:
        """-1, 0, +1 for root < x, root == x, root > x (x rational)."""
        x = Fraction(x)
        if self.exact:
            return _sign(self.lo - x)
        while True:
            if x <= self.lo:
                return 1
            if x > self.hi:
                return -1
            # x inside (lo, hi]: decide by a Sturm count, or split at x
            if evaluate(self.poly, x) == 0:
                return 0
            chain = self._sturm()
            if _variations_at(chain, self.lo) - _variations_at(chain, x) == 1:
                self.hi = x
                return -1
            self.lo = x
            return 1

    def sign_of(self, q) -> int:
        """Exact sign of q(root) for a polynomial q with rational coefficients."""
        q = _strip(q)
        if not q:
            return 0
        if self.exact:
            return _sign(evaluate(q, self.lo))
        g = poly_gcd(self.poly, q)
        if degree(g) >= 1 and count_real_roots(g, self.lo, self.hi) > 0:
            return 0
        # q(root) != 0, so interval evaluation pins the sign eventually
        for _ in range(400):
            vlo, vhi = _interval_eval(q, self.lo, self.hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            self.refine()
        raise AssertionError("sign refinement failed to converge")


def _interval_eval(q, lo, hi):
    vlo = vhi = Fraction(q[0])
    for c in q[1:]:
        cands = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
        vlo, vhi = min(cands) + c, max(cands) + c
    return vlo, vhi


def isolate_real_roots(p) -> list[RealRoot]:
    """Disjoint isolating intervals for every distinct real root of p."""
    sf = squarefree_part(p)
    if degree(sf) <= 0:
        return []
    chain = sturm_chain(sf)
    bound = root_bound(sf)
    out: list[RealRoot] = []
    stack = [(-bound, bound, None, None)]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        if vlo is None:
            vlo = _variations_at(chain, lo)
        if vhi is None:
            vhi = _variations_at(chain, hi)
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append(RealRoot(sf, lo, hi))
            continue
        mid = (lo + hi) / 2
        if evaluate(sf, mid) == 0:
            out.append(RealRoot(sf, mid, mid))
            # shrink a punctured gap around mid until it holds no other root
            eps = (hi - lo) / 4
            while True:
                lo2, hi2 = mid - eps, mid + eps
                if (
                    evaluate(sf, lo2) != 0
                    and evaluate(sf, hi2) != 0
                    and _variations_at(chain, lo2) - _variations_at(chain, hi2) == 1
                ):
                    break
                eps /= 2
            stack.append((lo, lo2, vlo, None))
            stack.append((hi2, hi, None, vhi))
        else:
            vm = _variations_at(chain, mid)
            stack.append((lo, mid, vlo, vm))
            stack.append((mid, hi, vm, vhi))
    out.sort(key=lambda r: (r.lo, r.hi))
    return out
