"""Cubic class enumeration against an independent BFS oracle and fixtures."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from reflect_rings.cubic import (
    TRACED3,
    CubicClass,
    LocalCondition,
    check_cubic_ON,
    check_disc_reduction,
    enumerate_cubics,
    h,
    h3,
    reduce_cubic,
    ring_multiply,
    ring_structure,
    ring_trace,
    shintani_coeffs,
    stabilizer_order,
    trace_ideal_in_3Z,
    _quad_transform,
)
from reflect_rings.errors import BadInput, BadPrimes, ZeroDiscriminant
from reflect_rings.forms import BinaryForm, Unimodular, act, disc, hessian

GENS = [
    Unimodular(1, 1, 0, 1),
    Unimodular(1, -1, 0, 1),
    Unimodular(0, -1, 1, 0),
    Unimodular(1, 0, 0, -1),
]


def small_form(bound=3):
    ints = st.integers(min_value=-bound, max_value=bound)
    return (
        st.tuples(ints, ints, ints, ints)
        .filter(lambda t: any(t))
        .map(BinaryForm)
    )


def unimodular_words(max_len=4):
    return st.lists(st.sampled_from(GENS), max_size=max_len).map(
        lambda ws: _compose(ws)
    )


def _compose(ws):
    g = Unimodular(1, 0, 0, 1)
    for w in ws:
        g = g @ w
    return g


class TestFixtures:
    def test_disc_one(self):
        classes = enumerate_cubics(1)
        assert len(classes) == 1
        assert classes[0].stab == 6
        # the stored rep and x^2 y + x y^2 share a class
        assert reduce_cubic(BinaryForm((0, 1, 1, 0))) == classes[0].rep
        assert h(1) == Fraction(1, 6)

    def test_disc_minus_27(self):
        classes = enumerate_cubics(-27)
        reps = {c.rep.coeffs for c in classes}
        assert reps == {(0, 1, 1, 7), (0, 3, 3, 1)}
        assert all(c.stab == 2 for c in classes)
        assert h(-27) == 1
        assert h3(-27) == Fraction(1, 2)
        # x^3 + y^3 lands on the traced one
        assert reduce_cubic(BinaryForm((1, 0, 0, 1))).coeffs == (0, 3, 3, 1)

    def test_disc_two_empty(self):
        assert enumerate_cubics(2) == []

    def test_stickelberger(self):
        for D in range(-30, 31):
            if D != 0 and D % 4 in (2, 3):
                assert enumerate_cubics(D) == []

    def test_zero_disc_rejected(self):
        with pytest.raises(ZeroDiscriminant):
            enumerate_cubics(0)
        with pytest.raises(ZeroDiscriminant):
            reduce_cubic(BinaryForm((1, 0, 0, 0)))

    def test_disc_minus_23(self):
        # one split class, one class of the field of x^3 - x - 1
        classes = enumerate_cubics(-23)
        assert sorted(c.stab for c in classes) == [1, 2]
        assert h(-23) == Fraction(3, 2)
        assert h3(621) == h(-23)
        rep = reduce_cubic(BinaryForm((1, 0, -1, -1)))
        assert rep in {c.rep for c in classes if c.stab == 1}

    def test_disc_25(self):
        # worked by hand: a single split class with a flip stabilizer
        classes = enumerate_cubics(25)
        assert len(classes) == 1
        assert classes[0].stab == 2
        assert h(25) == Fraction(1, 2)


class TestOracle:
    """BFS closure over a coefficient box, fully independent of the
    enumeration code paths."""

    @staticmethod
    def bfs_orbits(disc_bound, seed_box, cap):
        seen = {}
        orbits = 0
        for t in product(range(-seed_box, seed_box + 1), repeat=4):
            f = None
            if t in seen or t == (0, 0, 0, 0):
                continue
            f = BinaryForm(t)
            D = disc(f)
            if D == 0 or abs(D) > disc_bound:
                continue
            orbits += 1
            frontier = [f]
            seen[t] = orbits
            while frontier:
                cur = frontier.pop()
                for g in GENS:
                    nxt = act(cur, g)
                    if max(abs(x) for x in nxt.coeffs) > cap:
                        continue
                    if nxt.coeffs not in seen:
                        seen[nxt.coeffs] = orbits
                        frontier.append(nxt)
        return seen

    @pytest.mark.parametrize("cap", [16, 24])
    def test_class_sets_match(self, cap):
        bound = 24
        seen = self.bfs_orbits(bound, seed_box=7, cap=cap)
        for D in range(-bound, bound + 1):
            if D == 0 or D % 4 in (2, 3):
                continue
            classes = enumerate_cubics(D)
            orbit_ids = set()
            for c in classes:
                assert max(abs(x) for x in c.rep.coeffs) <= 7
                assert c.rep.coeffs in seen
                orbit_ids.add(seen[c.rep.coeffs])
            # distinct classes sit in distinct BFS orbits
            assert len(orbit_ids) == len(classes)
            # and every orbit of that disc contains exactly one stored rep
            all_ids = {
                oid
                for t, oid in seen.items()
                if disc(BinaryForm(t)) == D
            }
            assert orbit_ids == all_ids


class TestStructure:
    @given(small_form(), unimodular_words())
    @settings(max_examples=60, deadline=None)
    def test_hessian_covariance(self, f, g):
        assume(disc(f) != 0)
        assert hessian(act(f, g)) == _quad_transform(*hessian(f), g)

    @given(small_form(2), unimodular_words())
    @settings(max_examples=40, deadline=None)
    def test_reduce_constant_on_classes(self, f, g):
        assume(disc(f) != 0)
        assert reduce_cubic(act(f, g)) == reduce_cubic(f)

    @given(small_form(2))
    @settings(max_examples=40, deadline=None)
    def test_reduce_idempotent(self, f):
        assume(disc(f) != 0)
        rep = reduce_cubic(f)
        assert reduce_cubic(rep) == rep
        assert disc(rep) == disc(f)

    def test_stab_divides_six_and_weighted_sum(self):
        for D in range(-60, 61):
            if D == 0 or D % 4 in (2, 3):
                continue
            classes = enumerate_cubics(D)
            for c in classes:
                assert 6 % c.stab == 0
            assert sum(Fraction(6, c.stab) for c in classes).denominator == 1

    def test_stab_against_plain_box_search(self):
        for D in range(-20, 21):
            if D == 0 or D % 4 in (2, 3):
                continue
            for c in enumerate_cubics(D):
                naive = 0
                for p, q, r, s in product(range(-6, 7), repeat=4):
                    if p * s - q * r in (1, -1):
                        if act(c.rep, Unimodular(p, q, r, s)) == c.rep:
                            naive += 1
                assert naive == c.stab

    def test_stabilizer_order_matches_class_data(self):
        for D in (-31, -23, 5, 49):
            for c in enumerate_cubics(D):
                assert stabilizer_order(c.rep) == c.stab


class TestRing:
    def test_multiplication_table_is_associative(self):
        basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        for coeffs in [(0, 1, 1, 0), (1, 0, 0, 1), (1, -1, 2, -1), (2, 3, -1, 5)]:
            tensor = ring_structure(BinaryForm(coeffs))
            for x in basis:
                for y in basis:
                    for z in basis:
                        left = ring_multiply(tensor, ring_multiply(tensor, x, y), z)
                        right = ring_multiply(tensor, x, ring_multiply(tensor, y, z))
                        assert left == right

    def test_trace_form_determinant_is_disc(self):
        basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        for D in range(-60, 61):
            if D == 0 or D % 4 in (2, 3):
                continue
            for c in enumerate_cubics(D):
                tensor = ring_structure(c.rep)
                g = [
                    [ring_trace(tensor, ring_multiply(tensor, x, y)) for y in basis]
                    for x in basis
                ]
                det = (
                    g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
                    - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
                    + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
                )
                assert det == D

    def test_traced_condition_equals_ring_trace_ideal(self):
        for D in range(-100, 101):
            if D == 0 or D % 4 in (2, 3):
                continue
            for c in enumerate_cubics(D):
                assert (TRACED3.weight(c.rep) == 1) == trace_ideal_in_3Z(c.rep)


class TestConditions:
    def test_validation(self):
        with pytest.raises(BadInput):
            LocalCondition("nonsense")
        with pytest.raises(BadPrimes):
            LocalCondition.splitting(4, "111")
        with pytest.raises(BadInput):
            LocalCondition.splitting(5, "bogus")
        with pytest.raises(BadPrimes):
            LocalCondition.marked_root(1)

    def test_marked_root_weight(self):
        # x^2 y + x y^2 has roots 0, -1, infinity at every prime
        f = BinaryForm((0, 1, 1, 0))
        assert LocalCondition.marked_root(2).weight(f) == 3
        assert LocalCondition.marked_root(5).weight(f) == 3

    def test_condition_weights_are_class_invariants(self):
        conds = [
            TRACED3,
            LocalCondition.splitting(2, "111"),
            LocalCondition.splitting(5, "12"),
            LocalCondition.marked_root(2),
            LocalCondition.marked_root(7),
        ]
        f = BinaryForm((1, -1, 2, -1))
        for g in [Unimodular(1, 3, 0, 1), Unimodular(3, 1, 2, 1), Unimodular(0, -1, 1, 2)]:
            moved = act(f, g)
            for cond in conds:
                assert cond.weight(moved) == cond.weight(f)


class TestIdentities:
    def test_on_sweep_small(self):
        report = check_cubic_ON(40)
        assert report["status"] == "pass"
        assert report["violations"] == []

    def test_shintani_tables(self):
        plus = shintani_coeffs(1, 12)
        minus = shintani_coeffs(-1, 12)
        traced_minus = shintani_coeffs(-1, 12, traced=True)
        traced_plus = shintani_coeffs(1, 12, traced=True)
        assert plus[1] == Fraction(1, 6)
        assert traced_minus[1] == Fraction(1, 2)
        for n in range(1, 13):
            assert traced_plus[n] == minus[n]
            assert traced_minus[n] == 3 * plus[n]

    def test_disc_reduction_fixtures(self):
        for p, D in [(2, 4), (5, 25), (5, -575)]:
            report = check_disc_reduction(p, D)
            assert report["status"] == "pass", (p, D)
        assert check_disc_reduction(2, 4)["lhs"] == Fraction(1, 2)

    def test_disc_reduction_validation(self):
        with pytest.raises(BadPrimes):
            check_disc_reduction(3, 9)
        with pytest.raises(BadPrimes):
            check_disc_reduction(6, 36)
        with pytest.raises(BadInput):
            check_disc_reduction(5, 40)
        with pytest.raises(ZeroDiscriminant):
            check_disc_reduction(5, 0)

    def test_shintani_validation(self):
        with pytest.raises(BadInput):
            shintani_coeffs(2, 5)
        with pytest.raises(BadInput):
            shintani_coeffs(1, 0)


class TestClassInvariants:
    def test_class_dataclass_guards(self):
        with pytest.raises(BadInput):
            CubicClass(BinaryForm((0, 1, 1, 0)), 4, 1)
        with pytest.raises(BadInput):
            CubicClass(BinaryForm((0, 1, 1, 0)), 1, 2)

    def test_reps_are_reduced(self):
        for D in (-44, -23, 1, 5, 49, 81):
            for c in enumerate_cubics(D):
                assert reduce_cubic(c.rep) == c.rep
                assert disc(c.rep) == D == c.D
