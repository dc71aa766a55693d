"""Integer quadratics with fixed a(b^2 - 4ac), up to translation x -> x + t.

Translation fixes the leading coefficient and moves b by multiples of 2a,
so each class has a unique representative with -|a| < b <= |a|.  The
leading coefficient of any class divides the invariant, which makes the
enumeration a finite divisor scan.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadPrimes, ZeroInvariant
from .forms import BinaryForm
from .intmath import divisors, is_prime


@dataclass(frozen=True)
class QuadClass:
    a: int
    b: int
    c: int

    @property
    def invariant(self) -> int:
        return self.a * (self.b * self.b - 4 * self.a * self.c)

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def even_b(self) -> bool:
        return self.b % 2 == 0

    @property
    def real_roots(self) -> bool:
        return self.disc > 0

    def form(self) -> BinaryForm:
        return BinaryForm((self.a, self.b, self.c))


def enumerate_quadratics(I: int) -> list[QuadClass]:
    """One representative per translation class with that invariant."""
    if I == 0:
        raise ZeroInvariant("the invariant must be nonzero")
    out = []
    for d in divisors(I):
        for a in (d, -d):
            den = 4 * a * a
            for b in range(-abs(a) + 1, abs(a) + 1):
                num = a * b * b - I
                if num % den == 0:
                    out.append(QuadClass(a, b, num // den))
    out.sort(key=lambda qc: (abs(qc.a), qc.a, qc.b))
    return out


def count_q(I: int, even_b: bool = False, real_roots: bool = False) -> int:
    classes = enumerate_quadratics(I)
    if even_b:
        classes = [qc for qc in classes if qc.even_b]
    if real_roots:
        classes = [qc for qc in classes if qc.real_roots]
    return len(classes)


def qcounts(I: int) -> tuple[int, int, int, int]:
    """(q, q2, qplus, q2plus) in one pass."""
    classes = enumerate_quadratics(I)
    q = len(classes)
    q2 = sum(1 for qc in classes if qc.even_b)
    qp = sum(1 for qc in classes if qc.real_roots)
    q2p = sum(1 for qc in classes if qc.even_b and qc.real_roots)
    return q, q2, qp, q2p


def check_quadratic_ON(max_n: int) -> dict:
    """q2+(4n) = q(n) and q2(4n) = 2 q+(n) over 0 < |n| <= max_n."""
    violations = []
    checked = 0
    for m in range(1, max_n + 1):
        for n in (m, -m):
            q, _, qp, _ = qcounts(n)
            _, q2, _, q2p = qcounts(4 * n)
            checked += 2
            if q2p != q:
                violations.append({"n": n, "identity": "q2+(4n)=q(n)", "lhs": q2p, "rhs": q})
            if q2 != 2 * qp:
                violations.append({"n": n, "identity": "q2(4n)=2q+(n)", "lhs": q2, "rhs": 2 * qp})
    return {
        "identity_name": "quadratic reflection",
        "parameter_range": f"0 < |n| <= {max_n}",
        "checked_count": checked,
        "violations": violations,
        "status": "pass" if not violations else "fail",
    }


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion, p an odd prime."""
    v = pow(a % p, (p - 1) // 2, p)
    return v - p if v > 1 else v


def legendre_check(p1: int, p3: int) -> dict:
    """Reciprocity through counting: q+(p1 p3) and q2(4 p1 p3)."""
    if not (is_prime(p1) and is_prime(p3) and p1 % 4 == 1 and p3 % 4 == 3):
        raise BadPrimes("need primes p1 = 1 mod 4 and p3 = 3 mod 4")
    qp = count_q(p1 * p3, real_roots=True)
    q2 = count_q(4 * p1 * p3, even_b=True)
    expect_qp = 5 + legendre(p1, p3)
    expect_q2 = 10 + 2 * legendre(p3, p1)
    ok = qp == expect_qp and q2 == expect_q2
    return {
        "identity_name": "reciprocity via counts",
        "p1": p1,
        "p3": p3,
        "qplus": qp,
        "qplus_expected": expect_qp,
        "q2": q2,
        "q2_expected": expect_q2,
        "violations": [] if ok else [{"p1": p1, "p3": p3}],
        "status": "pass" if ok else "fail",
    }
