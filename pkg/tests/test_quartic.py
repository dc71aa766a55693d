"""Quartic countings pinned against printed class lists and cross-identities."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflect_rings.errors import (
    BadInput,
    MultipleRoots,
    SingularResolvent,
    ZeroDiscriminant,
)
from reflect_rings.forms import BinaryForm, MonicCubic, quartic_resolvent
from reflect_rings.quartic import (
    SIGN_CONDITIONS,
    QuarterForm,
    SymmetricPair,
    check_BQ,
    count_1211q,
    count_quartics,
    count_supereven,
    count_symmetric_matrices,
    invariants_IJ,
    is_supereven,
    quarter_classes,
    quartic_classes,
    quartic_invariants,
    search_boxes,
    stabilizer_order,
    supereven_classes,
    symmetric_matrices,
    two_adic_admissible,
    _EVEN_GENS,
    _apply_sym6,
    _congruent,
    _orbit_label,
    _pair_key,
    _sym6_actions,
)

# the five resolvents every identity check runs over, named by discriminant
G_M23 = MonicCubic(0, -1, -1)  # y^3 - y - 1, one real root
G_4 = MonicCubic(0, -1, 0)  # y^3 - y, fully split
G_229 = MonicCubic(0, -4, -1)  # y^3 - 4y - 1, three real roots
G_12 = MonicCubic(-2, -3, 6)  # (y - 2)(y^2 - 3)
G_M4 = MonicCubic(0, 1, 0)  # y^3 + y, one real root

SINGULAR = MonicCubic(0, 0, 0)


def even_class_of(coeffs, cap=60):
    """Balanced-least member of the even-equivalence component of coeffs."""
    return _orbit_label([tuple(coeffs)], _EVEN_GENS, cap)[tuple(coeffs)]


def pair_reachable(a, b, targets, cap=5):
    """Which of the target pair keys the congruence orbit of (a, b) meets."""
    start = _pair_key(a, b)
    actions = _sym6_actions()
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for cur in frontier:
            for recipe in actions:
                moved = _apply_sym6(recipe, cur)
                if moved in seen or max(abs(v) for v in moved) > cap:
                    continue
                seen.add(moved)
                nxt.append(moved)
        frontier = nxt
    return seen & targets


class TestInvariants:
    def test_match_through_resolvent(self):
        # the cubic x^3 - x - 1 read as a quartic with leading zero
        f = BinaryForm((0, 1, 0, -1, -1))
        g = quartic_resolvent(f)
        assert (g.g2, g.g1, g.g0) == (0, -1, 1)
        assert quartic_invariants(f) == invariants_IJ(g) == (3, -27)
        # its negative lands in the mirror family
        assert quartic_invariants(BinaryForm((0, -1, 0, 1, 1))) == invariants_IJ(
            G_M23
        )

    def test_shift_invariance(self):
        assert invariants_IJ(G_229) == invariants_IJ(G_229.shifted(5))
        assert invariants_IJ(G_12) == invariants_IJ(G_12.shifted(-3))

    def test_singular_rejected(self):
        with pytest.raises(SingularResolvent):
            invariants_IJ(SINGULAR)

    def test_wrong_degree(self):
        with pytest.raises(BadInput):
            quartic_invariants(BinaryForm((1, 0, -1, -1)))

    @given(
        st.tuples(*[st.integers(min_value=-4, max_value=4)] * 5).filter(any),
        st.integers(min_value=-3, max_value=3),
    )
    @settings(max_examples=150, deadline=None)
    def test_resolvent_discriminant_relation(self, coeffs, t):
        f = BinaryForm(coeffs)
        g = quartic_resolvent(f)
        i_val, j_val = quartic_invariants(f)
        assert 4 * i_val**3 - j_val**2 == 27 * g.disc()
        # shifting the resolvent moves neither invariant
        shifted = g.shifted(t)
        assert (
            shifted.g2**2 - 3 * shifted.g1,
            -2 * shifted.g2**3 + 9 * shifted.g2 * shifted.g1 - 27 * shifted.g0,
        ) == (i_val, j_val)


class TestQuarticCounts:
    def test_one_real_root_pin(self):
        assert count_quartics(G_M23) == Fraction(1, 2)
        classes = quartic_classes(G_M23)
        assert len(classes) == 1 and classes[0].stab == 2
        assert classes[0].resolvent().shift_key() == G_M23.shift_key()

    def test_three_real_roots_pin(self):
        assert count_quartics(G_12, "four_real_roots") == Fraction(1, 2)
        assert count_quartics(G_12, "pos_def") == Fraction(1, 2)
        assert count_quartics(G_12, "neg_def") == 0
        # at positive discriminant every indefinite quartic has four real roots
        assert count_quartics(G_12, "indefinite") == Fraction(1, 2)

    def test_split_resolvent_pin(self):
        classes = quartic_classes(G_4)
        assert [(c.rep.coeffs, c.stab) for c in classes] == [((0, -1, 0, 1, 0), 4)]
        assert count_quartics(G_4) == Fraction(1, 4)
        assert count_quartics(G_4, "four_real_roots") == Fraction(1, 4)

    def test_disc_229_pin(self):
        classes = {(c.rep.coeffs, c.stab) for c in quartic_classes(G_229)}
        assert classes == {((-2, -1, 3, 1, 0), 2), ((1, -1, 0, 0, 1), 2)}
        assert count_quartics(G_229, "four_real_roots") == Fraction(1, 2)
        assert count_quartics(G_229, "pos_def") == Fraction(1, 2)
        assert count_quartics(G_229, "neg_def") == 0

    def test_negative_disc_even_pin(self):
        assert count_quartics(G_M4) == Fraction(1, 2)
        assert count_quartics(G_M4, "indefinite") == Fraction(1, 2)
        assert count_quartics(G_M4, "four_real_roots") == 0
        assert count_quartics(G_M4, "pos_def") == 0

    def test_class_resolvents_and_stabs(self):
        for g in (G_M23, G_4, G_229, G_12, G_M4):
            for c in quartic_classes(g):
                assert c.resolvent().shift_key() == g.shift_key()
                assert c.stab % 2 == 0 and 24 % c.stab == 0

    def test_bad_condition(self):
        with pytest.raises(BadInput):
            count_quartics(G_M23, "positive")

    def test_singular_rejected(self):
        with pytest.raises(SingularResolvent):
            count_quartics(SINGULAR)

    def test_condition_tags(self):
        assert SIGN_CONDITIONS == (
            "any",
            "indefinite",
            "pos_def",
            "neg_def",
            "four_real_roots",
        )


class TestStabilizerOrder:
    def test_split_quartic(self):
        # x^3 y - x y^3 is fixed by the rotation of order four
        assert stabilizer_order(BinaryForm((0, 1, 0, -1, 0))) == 4

    def test_trivial_only(self):
        assert stabilizer_order(BinaryForm((0, -1, 0, 1, 1))) == 2

    def test_degenerate(self):
        with pytest.raises(ZeroDiscriminant):
            stabilizer_order(BinaryForm((1, 0, 0, 0, 0)))

    def test_wrong_degree(self):
        with pytest.raises(BadInput):
            stabilizer_order(BinaryForm((1, 0, -1, -1)))


class TestQuarterCounts:
    def test_one_real_root_pin(self):
        cl = quarter_classes(G_M23)
        assert [( (q.a, q.b, q.c, q.cp, q.d, q.e), s) for q, s in cl] == [
            ((0, -1, -2, -1, -1, 1), 2),
            ((1, -1, 0, 0, 0, 1), 2),
        ]
        assert count_1211q(G_M23) == 1

    def test_split_resolvent_pin(self):
        cl = quarter_classes(G_4)
        assert len(cl) == 6 and all(s == 8 for _, s in cl)
        assert count_1211q(G_4) == Fraction(3, 4)
        assert count_1211q(G_4, "four_real_roots") == Fraction(1, 4)
        assert count_1211q(G_4, "pos_def") == Fraction(1, 4)
        assert count_1211q(G_4, "neg_def") == Fraction(1, 4)

    def test_disc_12_pin(self):
        # two indefinite classes of orders 4 and 2, two positive definite of 4
        assert sorted(s for _, s in quarter_classes(G_12)) == [2, 4, 4, 4]
        assert count_1211q(G_12, "four_real_roots") == Fraction(3, 4)
        assert count_1211q(G_12, "pos_def") == Fraction(1, 2)
        assert count_1211q(G_12, "neg_def") == 0

    def test_disc_229_pin(self):
        cl = quarter_classes(G_229)
        assert len(cl) == 4 and all(s == 2 for _, s in cl)
        assert count_1211q(G_229, "four_real_roots") == 1
        assert count_1211q(G_229, "pos_def") == 1
        assert count_1211q(G_229, "neg_def") == 0

    def test_negative_disc_even_pin(self):
        assert count_1211q(G_M4) == Fraction(1, 2)

    def test_shift_contract(self):
        assert count_1211q(G_M23) == count_1211q(G_M23.shifted(3))
        assert count_1211q(G_229, "pos_def") == count_1211q(
            G_229.shifted(-2), "pos_def"
        )

    def test_resolvents_land_in_family(self):
        for q, _ in quarter_classes(G_229):
            assert q.resolvent().shift_key() == G_229.shift_key()
            assert quartic_resolvent(q.scaled_quartic()).shift_key() == (
                G_229.rescaled(4).shift_key()
            )

    def test_singular_rejected(self):
        with pytest.raises(SingularResolvent):
            count_1211q(SINGULAR)

    @given(st.tuples(*[st.integers(min_value=-3, max_value=3)] * 6).filter(any))
    @settings(max_examples=120, deadline=None)
    def test_scaled_resolvent_dictionary(self, tup):
        q = QuarterForm(*tup)
        big = quartic_resolvent(q.scaled_quartic())
        small = q.resolvent()
        assert (big.g2, big.g1, big.g0) == (
            4 * small.g2,
            16 * small.g1,
            64 * small.g0,
        )


class TestSupereven:
    def test_pattern(self):
        assert is_supereven((0, 4, 12, 8, -4))
        assert is_supereven((-3, 0, 8, 0, -4))
        assert not is_supereven((8, -16, 20, -12, 4))
        assert not is_supereven((1, -6, 20, -32, 32))

    def test_one_real_root_list_reproduced(self):
        # the four printed forms resolve into the mirror of the printed
        # target; enumerate the honest family and match them up
        target = MonicCubic(0, -16, 64)
        classes = supereven_classes(target)
        assert len(classes) == 4 and all(c.stab == 2 for c in classes)
        reps = {c.rep.coeffs for c in classes}
        printed = [
            (0, 4, 12, 8, -4),
            (-1, 4, 12, 8, 0),
            (-1, 0, 0, 8, -4),
            (-1, 4, 0, 0, -4),
        ]
        hit = set()
        for coeffs in printed:
            assert is_supereven(coeffs)
            label = even_class_of(coeffs, cap=40)
            assert label in reps
            hit.add(label)
        assert len(hit) == 4
        # the negation bijection carries the count over to the rescaled target
        assert count_supereven(target) == count_supereven(G_M23.rescaled(4)) == 2

    def test_three_real_roots_list(self):
        target = G_12.rescaled(4)
        assert (target.g2, target.g1, target.g0) == (-8, -48, 384)
        classes = supereven_classes(target)
        assert len(classes) == 8 and all(c.stab == 2 for c in classes)
        assert count_supereven(target, "four_real_roots") == 2
        assert count_supereven(target, "pos_def") == 2
        assert count_supereven(target, "neg_def") == 0
        reps = {c.rep.coeffs for c in classes}
        genuinely_supereven = [
            (-2, -8, -4, 8, 0),
            (0, 4, -4, -16, -8),
            (-1, 0, 8, 0, -12),
            (-3, 0, 8, 0, -4),
            (1, 0, 8, 0, 12),
            (3, 0, 8, 0, 4),
        ]
        hit = set()
        for coeffs in genuinely_supereven:
            label = even_class_of(coeffs)
            assert label in reps
            hit.add(label)
        assert len(hit) == 6
        # the other two printed forms break the coefficient pattern; one is
        # the x<->y reversal of a genuine representative, and reversal is
        # not an even substitution
        assert tuple(reversed((8, -16, 20, -12, 4))) in reps

    def test_even_stabilizers(self):
        for c in supereven_classes(MonicCubic(0, -16, -64)):
            assert is_supereven(c.rep.coeffs)
            assert c.stab % 2 == 0


class TestSymmetricMatrices:
    def test_split_pin(self):
        mats = symmetric_matrices(G_4)
        assert len(mats) == 6
        diags = sorted(tuple(m[i][i] for i in range(3)) for m in mats)
        assert diags == sorted(
            {
                (1, 0, -1),
                (1, -1, 0),
                (0, 1, -1),
                (0, -1, 1),
                (-1, 0, 1),
                (-1, 1, 0),
            }
        )
        assert all(
            m[0][1] == 0 and m[0][2] == 0 and m[1][2] == 0 for m in mats
        )
        assert count_symmetric_matrices(G_4) == 6
        # lifting the parity normalization admits the six transposition-like
        # matrices as well
        assert len(symmetric_matrices(G_4, even_off_diagonal=False)) == 12

    def test_empty_pins(self):
        assert count_symmetric_matrices(G_12) == 0
        assert count_symmetric_matrices(G_M4) == 0

    @given(
        st.permutations([0, 1, 2]),
        st.tuples(*[st.sampled_from([1, -1])] * 3),
    )
    @settings(max_examples=40, deadline=None)
    def test_signed_permutation_invariance(self, perm, signs):
        mats = set(symmetric_matrices(G_4, even_off_diagonal=False))
        p = tuple(
            tuple(signs[i] if perm[i] == j else 0 for j in range(3))
            for i in range(3)
        )
        conjugated = {_congruent(p, m) for m in mats}
        assert conjugated == mats


class TestAdmissibility:
    def test_odd_discriminants(self):
        assert two_adic_admissible(G_M23)
        assert two_adic_admissible(G_229)

    def test_even_split(self):
        assert two_adic_admissible(G_4)
        # squarefree kernel 17 of the quadratic factor is 1 mod 4
        assert two_adic_admissible(MonicCubic(0, -17, 0))

    def test_even_rejected(self):
        assert not two_adic_admissible(G_12)
        assert not two_adic_admissible(G_M4)

    def test_singular(self):
        with pytest.raises(SingularResolvent):
            two_adic_admissible(SINGULAR)


def _by_name(report):
    return {item["name"]: item for item in report["identities"]}


class TestIdentitySuite:
    def test_one_real_root(self):
        rep = check_BQ(G_M23)
        assert rep["status"] == "pass" and rep["two_adic_ok"]
        doubled = _by_name(rep)["2*h = h4"]
        assert doubled["asserted"] and doubled["ok"]
        assert doubled["lhs"] == doubled["rhs"] == "1"
        even_side = _by_name(rep)["4*h = h2"]
        assert not even_side["asserted"] and even_side["ok"]
        assert rep["counts"]["h2_supereven"] == "2"
        assert rep["inequality"] is None

    def test_split_resolvent(self):
        rep = check_BQ(G_4)
        assert rep["status"] == "pass" and rep["two_adic_ok"]
        matrix_identity = _by_name(rep)["24*(h_indef - h_def) = s"]
        assert matrix_identity["asserted"] and matrix_identity["ok"]
        assert matrix_identity["lhs"] == matrix_identity["rhs"] == "6"
        assert rep["inequality"]["ok"] and rep["inequality"]["asserted"]
        # the unestablished cross-counts are visible but carry no weight
        assert not _by_name(rep)["h = 2*h4_indef"]["asserted"]
        assert not _by_name(rep)["h = 2*h4_indef"]["ok"]

    def test_three_real_roots_odd_disc(self):
        rep = check_BQ(G_229)
        assert rep["status"] == "pass" and rep["two_adic_ok"]
        matrix_identity = _by_name(rep)["24*(h_indef - h_def) = s"]
        assert matrix_identity["asserted"] and matrix_identity["ok"]
        assert rep["counts"]["s"] == "0"
        ineq = rep["inequality"]
        assert ineq["ok"] and ineq["h_indef"] == ineq["h_def"] == "1/2"
        # the even-equivalence relations line up here without being asserted
        for name in (
            "2*h = h2_indef",
            "4*(h_indef + h_pos) = h2_indef + h2_pos",
            "4*(h_indef + h_neg) = h2_indef + h2_neg",
        ):
            assert _by_name(rep)[name]["ok"]
            assert not _by_name(rep)[name]["asserted"]

    def test_ramified_three_real_roots(self):
        rep = check_BQ(G_12)
        assert rep["status"] == "warn" and not rep["two_adic_ok"]
        assert rep["warnings"]
        # nothing is asserted under the unverified hypothesis, but the
        # matrix identity still balances at 0 = 0
        assert all(not item["asserted"] for item in rep["identities"])
        matrix_identity = _by_name(rep)["24*(h_indef - h_def) = s"]
        assert matrix_identity["ok"]
        assert matrix_identity["lhs"] == matrix_identity["rhs"] == "0"
        assert rep["counts"]["h4_indef"] == "3/4"
        assert rep["inequality"]["ok"] and not rep["inequality"]["asserted"]

    def test_ramified_one_real_root(self):
        rep = check_BQ(G_M4)
        assert rep["status"] == "warn" and not rep["two_adic_ok"]
        doubled = _by_name(rep)["2*h = h4"]
        assert not doubled["asserted"] and not doubled["ok"]
        assert (doubled["lhs"], doubled["rhs"]) == ("1", "1/2")

    def test_singular(self):
        with pytest.raises(SingularResolvent):
            check_BQ(SINGULAR)


class TestBoxSearch:
    def test_irreducible_negative_disc(self):
        f = BinaryForm((1, 0, -1, -1))
        found = search_boxes(f, 2)
        assert len(found) == 2 and all(sp.stab == 2 for sp in found)
        assert all(sp.resolvent_coeffs() == f.coeffs for sp in found)
        reps = {_pair_key(sp.a, sp.b) for sp in found}
        printed = [
            (
                ((0, 0, -1), (0, -1, 0), (-1, 0, -1)),
                ((0, -1, 0), (-1, 0, -1), (0, -1, -1)),
            ),
            (
                ((0, -1, 0), (-1, 0, -1), (0, -1, -1)),
                ((-1, 0, -1), (0, -1, -1), (-1, -1, -1)),
            ),
        ]
        reached = [pair_reachable(a, b, reps) for a, b in printed]
        assert all(len(r) == 1 for r in reached)
        assert reached[0] != reached[1]

    def test_doubled_even_diagonal(self):
        f = BinaryForm((2, 0, -2, -2))
        found = search_boxes(f, 2, even_diagonal=True)
        assert len(found) == 1 and found[0].stab == 2
        assert found[0].even_diagonal()
        printed_a = ((0, 0, 1), (0, -2, 0), (1, 0, 2))
        printed_b = ((0, 1, 0), (1, 0, 0), (0, 0, -2))
        assert SymmetricPair(printed_a, printed_b).resolvent_coeffs() == f.coeffs
        reps = {_pair_key(found[0].a, found[0].b)}
        assert pair_reachable(printed_a, printed_b, reps, cap=6) == reps

    def test_multiple_roots_rejected(self):
        with pytest.raises(MultipleRoots):
            search_boxes(BinaryForm((1, 0, 0, 0)), 1)

    def test_wrong_degree(self):
        with pytest.raises(BadInput):
            search_boxes(BinaryForm((1, 0, 0, -1, 0)), 1)
