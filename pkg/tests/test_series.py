from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from maex.errors import DivergentProductError, SingularSeriesError, VariableMismatchError
from maex.series import (
    BivariateSeries,
    TruncatedSeries,
    add,
    div_binomial,
    invert_unit,
    mul,
    mul_binomial,
    pochhammer_finite,
    pochhammer_infinite,
    t_substitute_exp,
)

from conftest import count_partitions


def S(cs, order=None, var="q"):
    return TruncatedSeries(cs, var, order)


def q(order):
    return TruncatedSeries.monomial(1, 1, order)


def pentagonal_oracle(order):
    """Euler's pentagonal number theorem, written out independently."""
    cs = [0] * (order + 1)
    k = 0
    while True:
        hit = False
        for m in {k, -k}:
            e = m * (3 * m - 1) // 2
            if e <= order:
                cs[e] = (-1) ** abs(m)
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return cs


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def series(draw, min_order=0, max_order=12, unit=False):
    order = draw(st.integers(min_order, max_order))
    cs = draw(st.lists(rationals, min_size=order + 1, max_size=order + 1))
    if unit and cs[0] == 0:
        cs[0] = Fraction(1)
    return S(cs, order)


class TestConstruction:
    def test_order_pads_and_truncates(self):
        assert S([1, 2], 4).coeffs == (1, 2, 0, 0, 0)
        assert S([1, 2, 3, 4], 1).coeffs == (1, 2)
        assert len(S([1], 7)) == 8

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            S([0.5], 2)

    def test_fraction_with_unit_denominator_normalised(self):
        s = S([Fraction(4, 2)], 0)
        assert type(s[0]) is int

    def test_index_beyond_order(self):
        with pytest.raises(IndexError):
            S([1], 3)[4]

    def test_immutable(self):
        s = S([1], 2)
        with pytest.raises(AttributeError):
            s.coeffs = (2,)

    def test_unknown_variable(self):
        with pytest.raises(ValueError):
            TruncatedSeries([1], "z", 1)


class TestAdd:
    def test_cancellation_takes_min_order(self):
        r = S([1, 1], 5) + S([1, -1], 3)
        assert r == S([2], 3)

    def test_zero_identity(self):
        a = S([3, Fraction(1, 2), -1], 6)
        assert add(a, TruncatedSeries.zero(6)) == a

    def test_divisor_series_from_geometric_terms(self):
        N = 10
        total = TruncatedSeries.zero(N)
        for n in range(1, N + 1):
            total = total + div_binomial(TruncatedSeries.monomial(1, n, N), 1, n)
        assert total[6] == 4
        assert list(total.coeffs[1:]) == [sympy.divisor_count(n) for n in range(1, N + 1)]

    def test_variable_mismatch(self):
        with pytest.raises(VariableMismatchError):
            S([1], 2) + S([1], 2, "t")


class TestMul:
    def test_geometric_inverse(self):
        assert mul(S([1, -1], 15), S([1] * 16, 15)) == TruncatedSeries.one(15)

    def test_q_pochhammer_three(self):
        p = mul(mul(S([1, -1], 10), S([1, 0, -1], 10)), S([1, 0, 0, -1], 10))
        assert p == S([1, -1, -1, 0, 1, 1, -1], 10)

    def test_identity(self):
        a = S([2, Fraction(-1, 3), 5], 4)
        assert mul(a, TruncatedSeries.one(4)) == a

    def test_variable_mismatch(self):
        with pytest.raises(VariableMismatchError):
            mul(S([1], 2), S([1], 2, "t"))


class TestInvert:
    def test_geometric(self):
        assert invert_unit(S([1, -1], 9)) == S([1] * 10, 9)

    def test_partition_numbers(self):
        euler = pochhammer_infinite(q(10), 1, 10)
        p = invert_unit(euler)
        oracle = [count_partitions(n) for n in range(11)]
        assert oracle == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
        assert list(p.coeffs) == oracle

    def test_singular(self):
        with pytest.raises(SingularSeriesError):
            invert_unit(S([0, 1], 3))

    def test_rational_constant(self):
        a = S([Fraction(2, 3), 1], 5)
        assert mul(a, invert_unit(a)) == TruncatedSeries.one(5)

    @given(series(unit=True))
    def test_double_inverse(self, a):
        assert invert_unit(invert_unit(a)) == a


class TestPochhammer:
    def test_empty_product(self):
        assert pochhammer_finite(q(5), 1, 0, 5) == TruncatedSeries.one(5)

    def test_q_q_2(self):
        assert pochhammer_finite(q(6), 1, 2, 6) == S([1, -1, -1, 1], 6)

    def test_q2_q2_2(self):
        q2 = TruncatedSeries.monomial(1, 2, 8)
        assert pochhammer_finite(q2, 2, 2, 8) == S([1, 0, -1, 0, -1, 0, 1], 8)

    def test_euler_function_to_7(self):
        assert pochhammer_infinite(q(7), 1, 7) == S([1, -1, -1, 0, 0, 1, 0, 1], 7)

    def test_euler_function_pentagonal(self):
        assert list(pochhammer_infinite(q(120), 1).coeffs) == pentagonal_oracle(120)

    def test_minus_q_squared_coefficient(self):
        d = pochhammer_infinite(TruncatedSeries.monomial(-1, 1, 10), 1)
        assert mul(d, d)[3] == 6

    def test_zero_argument(self):
        assert pochhammer_infinite(TruncatedSeries.zero(5), 1) == TruncatedSeries.one(5)

    def test_divergent(self):
        with pytest.raises(DivergentProductError):
            pochhammer_infinite(S([1, 1], 5), 1)

    def test_general_series_argument(self):
        # a = q + q^2 is not a monomial, exercised through full products
        a = S([0, 1, 1], 12)
        expected = TruncatedSeries.one(12)
        for k in range(4):
            expected = mul(expected, TruncatedSeries.one(12) - a.shift_within(k))
        assert pochhammer_finite(a, 1, 4, 12) == expected

    @pytest.mark.parametrize("N", [0, 7, 25, 40])
    def test_agrees_with_iterated_mul(self, N):
        expected = TruncatedSeries.one(N)
        for n in range(21):
            assert pochhammer_finite(q(N), 1, n, N) == expected
            expected = mul(expected, TruncatedSeries.one(N) - TruncatedSeries.monomial(1, n + 1, N))


class TestBinomialHelpers:
    @given(series(min_order=1), st.integers(1, 5), rationals)
    def test_div_undoes_mul(self, a, shift, c):
        assert div_binomial(mul_binomial(a, c, shift), c, shift) == a


class TestRingLaws:
    @settings(max_examples=60)
    @given(series(), series(), series())
    def test_associative(self, a, b, c):
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert (a + b) + c == a + (b + c)

    @settings(max_examples=60)
    @given(series(), series())
    def test_commutative(self, a, b):
        assert mul(a, b) == mul(b, a)
        assert a + b == b + a

    @settings(max_examples=60)
    @given(series(), series(), series())
    def test_distributive(self, a, b, c):
        assert mul(a, b + c) == mul(a, b) + mul(a, c)

    @given(series(), series())
    def test_order_is_min(self, a, b):
        assert mul(a, b).order == min(a.order, b.order)
        assert (a + b).order == min(a.order, b.order)

    @settings(max_examples=100)
    @given(series(max_order=30, unit=True))
    def test_inverse_times_self(self, a):
        assert mul(a, invert_unit(a)) == TruncatedSeries.one(a.order)


class TestTSubstitution:
    def test_q_to_exponential(self):
        r = t_substitute_exp(q(1), 4)
        assert r.variable == "t"
        assert list(r.coeffs) == [1, -1, Fraction(1, 2), Fraction(-1, 6), Fraction(1, 24)]

    def test_constant(self):
        assert t_substitute_exp(TruncatedSeries.one(3), 5) == TruncatedSeries.one(5, "t")

    def test_against_sympy(self):
        t = sympy.symbols("t")
        poly = S([3, 0, -2, Fraction(1, 2)], 3)
        expr = 3 - 2 * sympy.exp(-2 * t) + sympy.Rational(1, 2) * sympy.exp(-3 * t)
        ser = sympy.series(expr, t, 0, 7).removeO()
        expected = [Fraction(str(ser.coeff(t, j))) for j in range(7)]
        assert list(t_substitute_exp(poly, 6).coeffs) == expected

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_cohen_term_valuation(self, n):
        deg = n * n
        prod = TruncatedSeries.one(deg)
        for k in range(1, n):
            prod = mul_binomial(prod, 1, 2 * k)
        r = t_substitute_exp(prod.shift_within(n), n + 3)
        assert r.valuation() == n - 1

    @given(series(max_order=6), series(max_order=6))
    def test_linear(self, a, b):
        N = min(a.order, b.order)
        a, b = a.truncate(N), b.truncate(N)
        assert t_substitute_exp(a + b, 5) == t_substitute_exp(a, 5) + t_substitute_exp(b, 5)

    @given(series(max_order=5), series(max_order=5))
    def test_multiplicative(self, a, b):
        # exact polynomial product needs room for the full degree
        pa = S(a.coeffs, a.order + b.order)
        pb = S(b.coeffs, a.order + b.order)
        assert t_substitute_exp(mul(pa, pb), 5) == mul(t_substitute_exp(pa, 5), t_substitute_exp(pb, 5))

    def test_rejects_t_input(self):
        with pytest.raises(VariableMismatchError):
            t_substitute_exp(TruncatedSeries.one(2, "t"), 2)


class TestBivariate:
    def test_invariant_enforced(self):
        with pytest.raises(ValueError):
            BivariateSeries([[0, 0, 0], [0, 1, 0]])

    def test_z_derivative(self):
        g = BivariateSeries([[0, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 2]])
        assert list(g.z_derivative_at_one().coeffs) == [0, 0, 1, 5]
