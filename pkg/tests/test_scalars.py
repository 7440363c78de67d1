"""Exact-arithmetic tests for the scalar fields."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistdouble.errors import DivisionByZero, FieldLacksRoot, FieldMismatch
from twistdouble.scalars import (
    CyclotomicField,
    PrimeField,
    RationalField,
    cyclotomic_polynomial,
    field_from_descriptor,
    is_prime,
    root_of_unity,
)


def naive_poly_divide(num, den):
    """Long division oracle, independent of the library helpers."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - 1, len(den) - 2, -1):
        f = num[i] // den[-1]
        q[i - len(den) + 1] = f
        for j, d in enumerate(den):
            num[i - len(den) + 1 + j] -= f * d
    return q, num[: len(den) - 1]


class TestCyclotomicPolynomial:
    def test_order_one(self):
        assert cyclotomic_polynomial(1) == (-1, 1)

    def test_order_four_against_long_division(self):
        # x^4 - 1 divided by Phi_1 * Phi_2 = (x-1)(x+1)
        q, r = naive_poly_divide([-1, 0, 0, 0, 1], [-1, 0, 1])
        assert r == [0, 0]
        assert tuple(q) == cyclotomic_polynomial(4) == (1, 0, 1)

    def test_order_six_against_long_division(self):
        # Phi_1 Phi_2 Phi_3 = (x^3 - 1)(x + 1) = x^4 + x^3 - x - 1
        q, r = naive_poly_divide([-1, 0, 0, 0, 0, 0, 1], [-1, -1, 0, 1, 1])
        assert r == [0, 0, 0, 0]
        assert tuple(q) == cyclotomic_polynomial(6) == (1, -1, 1)

    @pytest.mark.parametrize("n", range(1, 31))
    def test_product_over_divisors_recovers_x_n_minus_1(self, n):
        prod = [1]
        for d in range(1, n + 1):
            if n % d == 0:
                phi = cyclotomic_polynomial(d)
                out = [0] * (len(prod) + len(phi) - 1)
                for i, a in enumerate(prod):
                    for j, b in enumerate(phi):
                        out[i + j] += a * b
                prod = out
        expected = [-1] + [0] * (n - 1) + [1]
        assert prod == expected


class TestRationalField:
    def test_basic_sum(self):
        q = RationalField()
        assert q.div(1, 2) + q.div(1, 3) == Fraction(5, 6)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            RationalField().div(1, 0)

    def test_roots_of_unity(self):
        q = RationalField()
        assert q.roots_of_unity(2) == [1, -1]
        assert q.roots_of_unity(3) == [1]
        with pytest.raises(FieldLacksRoot):
            q.primitive_root_of_unity(3)

    @given(st.fractions(), st.fractions())
    @settings(max_examples=60, deadline=None)
    def test_field_axioms(self, a, b):
        q = RationalField()
        assert a + b == b + a
        if b:
            assert q.div(a, b) * b == a
        if a:
            assert a * q.inv(a) == 1


class TestCyclotomicNumbers:
    def test_root_of_unity_order_two(self):
        x = root_of_unity(2, 1)
        assert x == -1
        assert x * x == 1

    def test_root_of_unity_trivial(self):
        assert root_of_unity(1, 0) == 1

    def test_cube_of_zeta3(self):
        z = root_of_unity(3, 1)
        assert z != 1
        assert z * z * z == 1

    def test_inverse_of_zeta3(self):
        f = CyclotomicField(3)
        z = f.zeta(1)
        inv = f.inv(z)
        assert inv == f.zeta(2)
        assert inv == f.element([-1, -1])  # -1 - z in the reduced basis
        assert inv * z == f.one

    def test_inverse_of_zero(self):
        f = CyclotomicField(3)
        with pytest.raises(DivisionByZero):
            f.inv(f.zero)

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            CyclotomicField(3).zeta(1) + CyclotomicField(4).zeta(1)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_all_roots_power_to_one(self, n):
        f = CyclotomicField(n)
        for k in range(n):
            assert f.zeta(k) ** n == f.one
            if k % n and n > 1:
                assert f.zeta(k) != f.one

    def test_roots_of_unity_subgroups(self):
        f = CyclotomicField(3)  # mu = mu_6
        assert len(f.roots_of_unity(3)) == 3
        assert len(f.roots_of_unity(2)) == 2
        assert len(f.roots_of_unity(6)) == 6
        for r in f.roots_of_unity(3):
            assert r ** 3 == f.one

    def test_primitive_root_orders(self):
        f = CyclotomicField(12)
        w = f.primitive_root_of_unity(4)
        assert w ** 4 == f.one
        assert w ** 2 != f.one

    @given(st.integers(-30, 30), st.integers(-30, 30),
           st.integers(-30, 30), st.integers(-30, 30))
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms_in_q_zeta4(self, a0, a1, b0, b1):
        f = CyclotomicField(4)
        a = f.element([a0, a1])
        b = f.element([b0, b1])
        assert a * b == b * a
        assert a * (b + f.one) == a * b + a
        if a:
            assert a * f.inv(a) == f.one

    def test_canonical_equality(self):
        f = CyclotomicField(5)
        a = f.zeta(1) + f.zeta(2)
        b = f.zeta(2) + f.zeta(1)
        assert a.coeffs == b.coeffs  # identical reduced representations
        assert not (a - b)


class TestPrimeField:
    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            PrimeField(10)
        assert is_prime(101)

    def test_inverse(self):
        f = PrimeField(7)
        for v in range(1, 7):
            assert f.from_int(v) * f.inv(f.from_int(v)) == f.one

    def test_division_by_zero(self):
        f = PrimeField(7)
        with pytest.raises(DivisionByZero):
            f.inv(f.zero)

    def test_roots_of_unity(self):
        f = PrimeField(7)
        cubes = f.roots_of_unity(3)
        assert len(cubes) == 3
        for r in cubes:
            assert r ** 3 == f.one
        w = f.primitive_root_of_unity(3)
        assert w ** 3 == f.one and w != f.one

    def test_lacks_root(self):
        with pytest.raises(FieldLacksRoot):
            PrimeField(7).primitive_root_of_unity(5)


def test_field_from_descriptor_round_trip():
    assert field_from_descriptor("q") == RationalField()
    assert field_from_descriptor("cyclotomic:6") == CyclotomicField(6)
    assert field_from_descriptor("fp:11") == PrimeField(11)
    with pytest.raises(ValueError):
        field_from_descriptor("real")
