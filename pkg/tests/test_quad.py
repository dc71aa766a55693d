"""Tests for the quadratic counts, against a slow scan that trusts nothing."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflect_rings.errors import BadPrimes, ZeroInvariant
from reflect_rings.quad import (
    QuadClass,
    check_quadratic_ON,
    count_q,
    enumerate_quadratics,
    legendre,
    legendre_check,
    qcounts,
)


def oracle_classes(I):
    """Scan every leading coefficient up to |I|, not only divisors, and solve
    for c from the defining equation.  Dedup by (a, b mod 2|a|)."""
    seen = {}
    for a in range(-abs(I), abs(I) + 1):
        if a == 0:
            continue
        for b in range(-abs(a), abs(a) + 1):
            num = a * b * b - I
            if num % (4 * a * a) != 0:
                continue
            c = num // (4 * a * a)
            assert a * (b * b - 4 * a * c) == I
            seen[(a, b % (2 * abs(a)))] = (a, b, c)
    return set(seen.values())


def oracle_classes_full_scan(I):
    """The fully naive version: scan (a, b, c) triples and test the defining
    equation directly.  Only usable for small |I|."""
    seen = {}
    bound_c = I * I
    for a in range(-abs(I), abs(I) + 1):
        if a == 0:
            continue
        for b in range(-abs(a), abs(a) + 1):
            for c in range(-bound_c, bound_c + 1):
                if a * (b * b - 4 * a * c) == I:
                    seen[(a, b % (2 * abs(a)))] = (a, b, c)
    return set(seen.values())


class TestEnumeration:
    def test_zero_invariant_rejected(self):
        with pytest.raises(ZeroInvariant):
            enumerate_quadratics(0)

    def test_invariant_one(self):
        # x^2 + x is the only class
        assert enumerate_quadratics(1) == [QuadClass(1, 1, 0)]

    def test_invariant_fifteen_table(self):
        got = {(qc.a, qc.b, qc.c) for qc in enumerate_quadratics(15)}
        assert got == {
            (-1, 1, -4),
            (15, -11, 2),
            (15, -1, 0),
            (15, 1, 0),
            (15, 11, 2),
        }

    def test_counts_fifteen(self):
        assert qcounts(15) == (5, 0, 4, 0)

    def test_counts_sixty(self):
        # cross-checked against oracle_classes(60) and both reflection
        # identities at n = 15
        q, q2, qp, q2p = qcounts(60)
        assert (q, q2, qp, q2p) == (18, 8, 13, 5)

    def test_window_and_invariant(self):
        for I in (7, -7, 48, -48, 100):
            for qc in enumerate_quadratics(I):
                assert qc.invariant == I
                assert -abs(qc.a) < qc.b <= abs(qc.a)

    def test_representatives_distinct_mod_translation(self):
        # translation by t sends b to b + 2at, fixing a
        for I in (36, -36, 97):
            keys = [(qc.a, qc.b % (2 * abs(qc.a))) for qc in enumerate_quadratics(I)]
            assert len(keys) == len(set(keys))

    def test_sorted_order(self):
        classes = enumerate_quadratics(60)
        keys = [(abs(qc.a), qc.a, qc.b) for qc in classes]
        assert keys == sorted(keys)

    @pytest.mark.parametrize("I", [1, -1, 4, -4, 9, 12, -12])
    def test_full_scan_oracle_small(self, I):
        got = {(qc.a, qc.b, qc.c) for qc in enumerate_quadratics(I)}
        assert got == oracle_classes_full_scan(I)

    @given(st.integers(min_value=-120, max_value=120).filter(lambda n: n != 0))
    @settings(max_examples=60, deadline=None)
    def test_oracle_agreement(self, I):
        got = {(qc.a, qc.b, qc.c) for qc in enumerate_quadratics(I)}
        assert got == oracle_classes(I)

    def test_real_roots_sign(self):
        # classes with positive discriminant exist iff a and the invariant
        # share a sign, and such classes have sign(a) = sign(I)
        for I in (15, -15, 60, -60, 7, -7):
            for qc in enumerate_quadratics(I):
                if qc.real_roots:
                    assert (qc.a > 0) == (I > 0)


class TestReflection:
    def test_small_sweep(self):
        report = check_quadratic_ON(40)
        assert report["status"] == "pass"
        assert report["violations"] == []

    def test_spot_fifteen(self):
        # q2+(60) = q(15) and q2(60) = 2 q+(15)
        q, _, qp, _ = qcounts(15)
        _, q2, _, q2p = qcounts(60)
        assert q2p == q == 5
        assert q2 == 2 * qp == 8


class TestLegendre:
    def test_symbol_values(self):
        assert legendre(5, 3) == -1
        assert legendre(1, 3) == 1
        assert legendre(2, 5) == -1
        assert legendre(4, 5) == 1
        assert legendre(3, 3) == 0

    def test_bad_primes_rejected(self):
        with pytest.raises(BadPrimes):
            legendre_check(4, 3)
        with pytest.raises(BadPrimes):
            legendre_check(5, 5)
        with pytest.raises(BadPrimes):
            legendre_check(3, 5)

    @pytest.mark.parametrize("p1,p3", [(5, 3), (5, 7), (13, 3), (13, 7), (17, 11), (29, 19)])
    def test_reciprocity_counts(self, p1, p3):
        report = legendre_check(p1, p3)
        assert report["status"] == "pass"

    def test_count_matches_symbol(self):
        # the two symbols disagree exactly when both primes are found
        # nonresidues of each other; spot one of each kind
        r1 = legendre_check(13, 3)   # (13|3) = (1|3) = 1
        assert r1["qplus"] == 6
        r2 = legendre_check(5, 3)    # (5|3) = (2|3) = -1
        assert r2["qplus"] == 4
