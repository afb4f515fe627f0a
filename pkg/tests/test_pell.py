from math import isqrt

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from maex.errors import BudgetExceededError
from maex.mock_theta import kronecker12, sigma_star_series
from maex.pell import (
    PellSolution,
    enumerate_classes,
    pell_agreement_check,
    s_star,
    signed_factorization,
    t_from_qseries,
    t_multiplicative,
    t_pell,
    t_prime_power,
)


def t_union_find(n, box):
    """Oracle: group all solutions with |v| <= box into components under eps and negation."""
    sols = []
    for v in range(-box, box + 1):
        u2 = n + 6 * v * v
        if u2 >= 0 and isqrt(u2) ** 2 == u2:
            u = isqrt(u2)
            sols += [(u, v), (-u, v)] if u else [(0, v)]
    parent = {s: s for s in sols}

    def find(s):
        while parent[s] != s:
            s = parent[s]
        return s

    def union(a, b):
        if b in parent:
            parent[find(a)] = find(b)

    for u, v in sols:
        union((u, v), (5 * u + 12 * v, 2 * u + 5 * v))
        union((u, v), (-u, -v))
    roots = {find(s) for s in sols}
    total = 0
    for r in roots:
        total += kronecker12(r[0] + 3 * r[1])
    return total


ADMISSIBLE = [n for n in range(-700, 701) if n % 6 == 1 and n != 0]


class TestPellSolutions:
    def test_unit_round_trip(self):
        s = PellSolution(7, 2)
        assert s.times_unit(1).times_unit(-1) == s
        assert s.times_unit(1).n == s.n == 25

    def test_reduction_is_canonical(self):
        s = PellSolution(1, 2)
        far = s.times_unit(1).times_unit(1).times_unit(1)
        assert far.reduced() == s.reduced()
        assert PellSolution(-far.u, -far.v).reduced() == s.reduced()

    def test_n1(self):
        cs = enumerate_classes(1)
        assert PellSolution(1, 0) in cs.representatives
        assert cs.t_value == 1

    def test_n25(self):
        cs = enumerate_classes(25)
        assert {(s.u, s.v) for s in cs.representatives} == {(5, 0), (7, 2), (7, -2)}
        assert cs.t_value == 1

    def test_minus23(self):
        cs = enumerate_classes(-23)
        assert len(cs.representatives) == 2 and cs.minus_count == 2
        assert t_pell(-23) == -2

    def test_inadmissible(self):
        with pytest.raises(ValueError):
            enumerate_classes(5)
        with pytest.raises(ValueError):
            enumerate_classes(0)

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            enumerate_classes(4807, budget=4801)

    @pytest.mark.parametrize("n", ADMISSIBLE[::3])
    def test_against_union_find(self, n):
        assert t_pell(n) == t_union_find(n, 6 * isqrt(abs(n)) + 12)


class TestMultiplicative:
    def test_signed_factorization(self):
        f = signed_factorization(-23 * 49)
        assert sorted(f.factors) == [(-23, 1), (7, 2)]
        f = signed_factorization(25)
        assert f.factors == ((-5, 2),)

    def test_prime_power_rows(self):
        assert t_prime_power(13, 1) == 0
        assert t_prime_power(-5, 2) == 1
        assert t_prime_power(7, 2) == -1
        assert t_prime_power(7, 4) == 1
        assert t_prime_power(73, 1) in (2, -2)
        assert t_prime_power(-23, 2) == 3
        assert t_prime_power(-23, 3) == -4

    def test_values(self):
        assert t_multiplicative(49) == -1
        assert t_multiplicative(13) == 0
        assert t_multiplicative(1) == 1
        assert t_multiplicative(25) == 1

    @pytest.mark.parametrize("n", ADMISSIBLE)
    def test_against_pell(self, n):
        assert t_multiplicative(n) == t_pell(n)

    def test_multiplicativity_on_coprime_pairs(self):
        pairs = []
        for m in ADMISSIBLE:
            for n in ADMISSIBLE:
                if abs(m) > 1 and abs(n) > 1 and sympy.gcd(m, n) == 1 and abs(m * n) <= 4801 and m < n:
                    pairs.append((m, n))
        assert len(pairs) >= 50
        for m, n in pairs[:: max(1, len(pairs) // 60)]:
            assert t_pell(m * n) == t_pell(m) * t_pell(n)


class TestQSeries:
    def test_anchors(self):
        assert t_from_qseries(1) == 1
        assert t_from_qseries(-23) == -2
        assert t_from_qseries(25) == 1

    def test_domain(self):
        with pytest.raises(ValueError):
            t_from_qseries(7)
        with pytest.raises(BudgetExceededError):
            t_from_qseries(24 * 600 + 1, budget=500)

    def test_s_star(self):
        assert s_star(1) == -1
        sig = sigma_star_series(50)
        for n in range(1, 51):
            assert 2 * s_star(n) == sig[n]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(-50, 50))
    def test_triple_agreement_sample(self, k):
        n = 24 * k + 1
        assert t_pell(n) == t_multiplicative(n) == t_from_qseries(n)

    def test_full_agreement(self):
        assert all(r.passed for r in pell_agreement_check(1201))

    def test_vanishing_off_24(self):
        for n in range(-1000, 1001):
            if n and n % 6 == 1 and n % 24 != 1:
                assert t_pell(n) == 0


class TestKronecker:
    @pytest.mark.parametrize("a,expected", [(1, 1), (5, -1), (6, 0), (7, -1), (11, 1), (13, 1), (2, 0), (3, 0)])
    def test_values(self, a, expected):
        assert kronecker12(a) == expected

    @given(st.integers(1, 10**6))
    def test_is_jacobi_symbol(self, a):
        expected = sympy.jacobi_symbol(12, a) if a % 2 else 0
        assert kronecker12(a) == expected
