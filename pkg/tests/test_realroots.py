from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from reflect_rings.realroots import (
    RealRoot,
    count_real_roots,
    isolate_real_roots,
    root_bound,
    squarefree_part,
)


def test_three_integer_roots():
    roots = isolate_real_roots((1, -6, 11, -6))  # (x-1)(x-2)(x-3)
    assert len(roots) == 3
    for r, target in zip(roots, (1, 2, 3)):
        assert r.compare(Fraction(target) - Fraction(1, 3)) == 1
        assert r.compare(Fraction(target) + Fraction(1, 3)) == -1
        assert r.compare(target) == 0


def test_irrational_pair():
    roots = isolate_real_roots((1, 0, -2))
    assert len(roots) == 2
    neg, pos = roots
    assert pos.sign_of((1, 0, -2)) == 0
    assert pos.sign_of((1, -1)) == 1  # sqrt2 - 1 > 0
    assert neg.sign_of((1, 1)) == -1  # -sqrt2 + 1 < 0
    assert pos.sign_of((1, 0, -2, 0)) == 0  # x*(x^2-2)


def test_counts():
    assert count_real_roots((1, 0, 0, 0, 1)) == 0
    assert count_real_roots((1, 0, 0, 0, -1)) == 2
    assert count_real_roots((1, 0, -1, -1)) == 1
    assert count_real_roots((1, 0, -2), 0, None) == 1
    assert count_real_roots((1, 0, -2), None, 0) == 1


def test_multiplicity_collapses():
    # (x-1)^2 (x+2)
    p = (1, 0, -3, 2)
    assert len(squarefree_part(p)) == 3
    assert count_real_roots(p) == 2
    assert len(isolate_real_roots(p)) == 2


def test_plastic_root_location():
    (r,) = isolate_real_roots((1, 0, -1, -1))
    assert r.compare(1) == 1
    assert r.compare(2) == -1
    r.refine_below(Fraction(1, 1000))
    assert Fraction(132, 100) < r.lo < r.hi < Fraction(133, 100)


def test_refinement_keeps_validity():
    (r,) = isolate_real_roots((1, -1, 0, -1))  # x^3 - x^2 - 1
    before = (r.lo, r.hi)
    r.refine_below(Fraction(1, 10**9))
    assert before[0] <= r.lo < r.hi <= before[1]
    assert r.sign_of((1, 0, 0)) == 1


@given(st.lists(st.integers(-8, 8), min_size=3, max_size=3, unique=True))
def test_split_cubics(rs):
    a, b, c = rs
    # (x-a)(x-b)(x-c) expanded
    p = (1, -(a + b + c), a * b + a * c + b * c, -a * b * c)
    iso = isolate_real_roots(p)
    assert len(iso) == 3
    assert [r for r in sorted(rs)] == [
        next(v for v in sorted(rs) if r.compare(v) == 0) for r in iso
    ]
    assert root_bound(p) > max(abs(v) for v in rs)
