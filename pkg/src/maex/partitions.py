"""Partitions, the statistics mex / maex / largest part, and their generating functions.

The brute-force side enumerates partitions in descending lexicographic
order; the series side evaluates the known generating functions for
sigma-maex, sigma-L and sigma-mex with :mod:`maex.series`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .errors import UndefinedStatisticError
from .mock_theta import cohen_finite_form, cohen_hypergeometric
from .report import CheckReport
from .series import (
    BivariateSeries,
    TruncatedSeries,
    div_binomial,
    invert_unit,
    mul,
    mul_binomial,
    pochhammer_finite,
    pochhammer_infinite,
)

DEFAULT_BRUTE_BUDGET = 60


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        p = tuple(self.parts)
        object.__setattr__(self, "parts", p)
        if any(x < 1 for x in p):
            raise ValueError("parts must be positive")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError("parts must be weakly decreasing")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def conjugate(self) -> "Partition":
        return Partition(conjugate_parts(self.parts))


def conjugate_parts(parts: Sequence[int]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def raw_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Partitions of n as tuples, descending lexicographic order (algorithm ZS1)."""
    if n < 1:
        return
    x = [1] * (n + 1)
    x[1] = n
    m = h = 1
    yield (n,)
    while x[1] != 1:
        if x[h] == 2:
            m += 1
            x[h] = 1
            h -= 1
        else:
            r = x[h] - 1
            t = m - h + 1
            x[h] = r
            while t >= r:
                h += 1
                x[h] = r
                t -= r
            if t == 0:
                m = h
            else:
                m = h + 1
                if t > 1:
                    h += 1
                    x[h] = t
        yield tuple(x[1 : m + 1])


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every partition of n exactly once; nothing for n = 0."""
    for parts in raw_partitions(n):
        yield Partition(parts)


def _parts(pi) -> Sequence[int]:
    parts = pi.parts if isinstance(pi, Partition) else pi
    if not parts:
        raise UndefinedStatisticError("statistic undefined on the empty partition")
    return parts


def largest_part(pi) -> int:
    return _parts(pi)[0]


def maex(pi) -> int:
    """Largest nonnegative integer below the largest part that is not a part."""
    parts = _parts(pi)
    want = parts[0] - 1
    prev = parts[0]
    for p in parts:
        if p == prev:
            continue
        if p != want:
            break
        want -= 1
        prev = p
    return want


def mex(pi) -> int:
    """Smallest positive integer that is not a part."""
    parts = _parts(pi)
    want = 1
    for p in reversed(parts):
        if p == want:
            want += 1
        elif p > want:
            break
    return want


@dataclass(frozen=True)
class BruteForceTable:
    """p(n), sigma-L(n), sigma-mex(n), sigma-maex(n) by enumeration, index n = 0..max_n (row 0 unused)."""

    max_n: int
    p: tuple[int, ...]
    sigma_L: tuple[int, ...]
    sigma_mex: tuple[int, ...]
    sigma_maex: tuple[int, ...]


@lru_cache(maxsize=4)
def brute_force_table(max_n: int = DEFAULT_BRUTE_BUDGET) -> BruteForceTable:
    p, sl, smex, smaex = [0], [0], [0], [0]
    for n in range(1, max_n + 1):
        c = a = b = d = 0
        for parts in raw_partitions(n):
            c += 1
            a += parts[0]
            b += mex(parts)
            d += maex(parts)
        p.append(c)
        sl.append(a)
        smex.append(b)
        smaex.append(d)
    return BruteForceTable(max_n, tuple(p), tuple(sl), tuple(smex), tuple(smaex))


def sigma_maex_bruteforce(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return sum(maex(parts) for parts in raw_partitions(n))


def sigma_L_bruteforce(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return sum(parts[0] for parts in raw_partitions(n))


def sigma_mex_bruteforce(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return sum(mex(parts) for parts in raw_partitions(n))


# ---------------------------------------------------------------------------
# basic series


def q(order: int) -> TruncatedSeries:
    return TruncatedSeries.monomial(1, 1, order)


def euler_product(order: int) -> TruncatedSeries:
    """(q;q)_oo."""
    return pochhammer_infinite(q(order), 1, order)


def partition_series(order: int) -> TruncatedSeries:
    """1/(q;q)_oo = sum p(n) q^n."""
    return invert_unit(euler_product(order))


def divisor_series(order: int) -> TruncatedSeries:
    """sum_{n>=1} q^n/(1-q^n) = sum d(n) q^n."""
    cs = [0] * (order + 1)
    for k in range(1, order + 1):
        for m in range(k, order + 1, k):
            cs[m] += 1
    return TruncatedSeries(cs, "q")


def _inner_gap_free(k: int, order: int) -> TruncatedSeries:
    """sum_{m>=1} q^{m(k+1)} (-q;q)_{m-1}."""
    inner = TruncatedSeries.zero(order)
    prod = TruncatedSeries.one(order)
    m = 1
    while m * (k + 1) <= order:
        inner = inner + prod.shift_within(m * (k + 1))
        prod = mul_binomial(prod, -1, m)
        m += 1
    return inner


def _g_rows(max_k: int, order: int):
    inv = TruncatedSeries.one(order)  # 1/(q;q)_{k-1}
    for k in range(1, max_k + 1):
        if k + 1 > order:
            yield k, TruncatedSeries.zero(order)
        else:
            yield k, mul(inv, _inner_gap_free(k, order))
        if k <= order:
            inv = div_binomial(inv, 1, k)


def sigma_maex_series_v1(order: int) -> TruncatedSeries:
    """sum_k k/(q;q)_{k-1} sum_m q^{m(k+1)} (-q;q)_{m-1}."""
    total = TruncatedSeries.zero(order)
    for k, row in _g_rows(max(order - 1, 0), order):
        total = total + row * k
    return total


def sigma_maex_series_v2(order: int) -> TruncatedSeries:
    """(1/(q;q)_oo) (sum q^n/(1-q^n) - sum q^n (q^2;q^2)_{n-1})."""
    return mul(partition_series(order), divisor_series(order) - cohen_finite_form(order))


def sigma_maex_series_v3(order: int) -> TruncatedSeries:
    """(1/(q;q)_oo) (sum q^n/(1-q^n) + sum (-1)^n q^{n^2}/(q;q^2)_n)."""
    return mul(partition_series(order), divisor_series(order) + cohen_hypergeometric(order))


def sigma_L_series(order: int) -> TruncatedSeries:
    return mul(partition_series(order), divisor_series(order))


def difference_series(order: int) -> TruncatedSeries:
    """sum (sigma-L(n) - sigma-maex(n)) q^n = (1/(q;q)_oo) sum q^n (q^2;q^2)_{n-1}."""
    return mul(partition_series(order), cohen_finite_form(order))


def sigma_mex_series(order: int) -> TruncatedSeries:
    """(-q;q)_oo^2."""
    d = pochhammer_infinite(TruncatedSeries.monomial(-1, 1, order), 1, order)
    return mul(d, d)


def _default_t_provider(n: int) -> int:
    from .pell import t_multiplicative

    return t_multiplicative(n)


def sigma_maex_formula(order: int, t_provider: Callable[[int], int] | None = None) -> TruncatedSeries:
    """sigma-maex(n) = sum_{k=1}^n p(n-k) (d(k) + T(1-24k)/2).

    ``t_provider(m)`` returns T(m) for m = 1 - 24k; the default uses the
    multiplicative prime-power formula.
    """
    t_provider = t_provider or _default_t_provider
    p = partition_series(order)
    d = divisor_series(order)
    w = [0] * (order + 1)
    for k in range(1, order + 1):
        w[k] = d[k] + Fraction(t_provider(1 - 24 * k), 2)
    return mul(p, TruncatedSeries(w, "q"))


# ---------------------------------------------------------------------------
# G(z, q)


def g_bivariate(max_k: int, order: int) -> BivariateSeries:
    """g(k, n) = number of partitions of n with maex k, for 1 <= k <= max_k (row 0 is zero)."""
    grid = [[0] * (order + 1)]
    for _, row in _g_rows(max_k, order):
        grid.append(list(row.coeffs))
    return BivariateSeries(grid)


def g_bruteforce(k: int, n: int) -> int:
    return sum(1 for parts in raw_partitions(n) if maex(parts) == k)


# ---------------------------------------------------------------------------
# stat table (series side)


@dataclass(frozen=True)
class StatTable:
    """Exact statistics for n = 0..max_n from the series engine."""

    max_n: int
    p: tuple[int, ...]
    sigma_L: tuple[int, ...]
    sigma_mex: tuple[int, ...]
    sigma_maex: tuple[int, ...]

    def __post_init__(self):
        for n in range(1, self.max_n + 1):
            if self.sigma_L[n] < self.sigma_maex[n] + self.p[n]:
                raise ValueError(f"sigma-L({n}) < sigma-maex({n}) + p({n})")

    def difference(self, n: int) -> int:
        return self.sigma_L[n] - self.sigma_maex[n]

    def expectation(self, n: int) -> Fraction:
        """Mean of L - maex over the partitions of n."""
        if n < 1:
            raise ValueError("n must be positive")
        return Fraction(self.difference(n), self.p[n])


@lru_cache(maxsize=4)
def stat_table(max_n: int) -> StatTable:
    p = partition_series(max_n)
    sl = mul(p, divisor_series(max_n))
    diff = mul(p, cohen_finite_form(max_n))
    smex = sigma_mex_series(max_n)
    return StatTable(
        max_n,
        tuple(p.coeffs),
        tuple(sl.coeffs),
        tuple(smex.coeffs),
        tuple(a - b for a, b in zip(sl.coeffs, diff.coeffs)),
    )


# ---------------------------------------------------------------------------
# checks


def _first_mismatch(seqs: dict, lo: int, hi: int):
    names = list(seqs)
    for n in range(lo, hi + 1):
        vals = [seqs[k][n] for k in names]
        if any(v != vals[0] for v in vals):
            return {"n": n, **{k: v for k, v in zip(names, vals)}}
    return None


def sigma_maex_agreement_check(order: int, brute_budget: int = DEFAULT_BRUTE_BUDGET, t_provider=None) -> list[CheckReport]:
    """The three generating functions and the convolution formula agree; brute force up to the budget."""
    seqs = {
        "v1": sigma_maex_series_v1(order).coeffs,
        "v2": sigma_maex_series_v2(order).coeffs,
        "v3": sigma_maex_series_v3(order).coeffs,
        "formula": sigma_maex_formula(order, t_provider).coeffs,
    }
    bad = _first_mismatch(seqs, 0, order)
    reports = [CheckReport("sigma-maex-evaluators", bad is None, {"order": order}, bad)]
    nb = min(order, brute_budget)
    if nb >= 1:
        bt = brute_force_table(nb)
        bad = _first_mismatch({"bruteforce": bt.sigma_maex, "v1": seqs["v1"]}, 1, nb)
        reports.append(CheckReport("sigma-maex-bruteforce", bad is None, {"max_n": nb}, bad))
    return reports


def sigma_maex_formula_check(order: int, brute_budget: int = DEFAULT_BRUTE_BUDGET, t_provider=None) -> list[CheckReport]:
    """The p(n-k)(d(k) + T(1-24k)/2) convolution against the divisor/sigma* series and brute force."""
    formula = sigma_maex_formula(order, t_provider).coeffs
    bad = _first_mismatch({"formula": formula, "v2": sigma_maex_series_v2(order).coeffs}, 0, order)
    reports = [CheckReport("thm2.2-vs-series", bad is None, {"order": order}, bad)]
    nb = min(order, brute_budget)
    if nb >= 1:
        bad = _first_mismatch({"formula": formula, "bruteforce": brute_force_table(nb).sigma_maex}, 1, nb)
        reports.append(CheckReport("thm2.2-vs-bruteforce", bad is None, {"max_n": nb}, bad))
    return reports


def sigma_mex_check(order: int, brute_budget: int = DEFAULT_BRUTE_BUDGET) -> CheckReport:
    series = sigma_mex_series(order)
    nb = min(order, brute_budget)
    bt = brute_force_table(nb) if nb >= 1 else None
    details = {"order": order, "max_n": nb, "n0_coefficient": series[0]}
    if series[0] != 1:
        return CheckReport("eq1.1", False, details, {"n": 0, "series": series[0], "expected": 1})
    for n in range(1, nb + 1):
        if bt.sigma_mex[n] != series[n]:
            return CheckReport("eq1.1", False, details, {"n": n, "bruteforce": bt.sigma_mex[n], "series": series[n]})
    return CheckReport("eq1.1", True, details)


def difference_identity_check(order: int) -> CheckReport:
    """sigma-L series minus the double-sum sigma-maex series equals (1/(q;q)_oo) sum q^n (q^2;q^2)_{n-1}."""
    lhs = sigma_L_series(order) - sigma_maex_series_v1(order)
    rhs = difference_series(order)
    bad = _first_mismatch({"lhs": lhs.coeffs, "rhs": rhs.coeffs}, 0, order)
    return CheckReport("eq1.6", bad is None, {"order": order}, bad)


def gap_free(parts: Sequence[int]) -> bool:
    return all(parts[i] - parts[i + 1] <= 1 for i in range(len(parts) - 1))


def _largest_repeated_rest_distinct(parts: Sequence[int], times: int) -> bool:
    L = parts[0]
    if sum(1 for p in parts if p == L) != times:
        return False
    rest = [p for p in parts if p != L]
    return len(set(rest)) == len(rest)


def gap_free_bijection_check(n: int) -> CheckReport:
    """Conjugation maps gap-free partitions with smallest part k+1 onto partitions whose
    largest part occurs exactly k+1 times with all other parts distinct."""
    allp = list(raw_partitions(n))
    counts = {}
    for k in range(1, n + 1):
        fam_a = {p for p in allp if p[-1] == k + 1 and gap_free(p)}
        fam_b = {p for p in allp if _largest_repeated_rest_distinct(p, k + 1)}
        image = {conjugate_parts(p) for p in fam_a}
        if image != fam_b:
            return CheckReport(
                "bijection", False, {"n": n}, {"k": k, "gap_free": len(fam_a), "repeated_largest": len(fam_b)}
            )
        if fam_a:
            counts[k] = len(fam_a)
    return CheckReport("bijection", True, {"n": n, "counts": counts})


def partial_sum_identity_check(n: int, order: int) -> CheckReport:
    """sum_{m=1}^n q^m (q;q)_{m-1} = 1 - (q;q)_n."""
    lhs = TruncatedSeries.zero(order)
    for m in range(1, n + 1):
        lhs = lhs + pochhammer_finite(q(order), 1, m - 1, order).shift_within(m)
    rhs = 1 - pochhammer_finite(q(order), 1, n, order)
    bad = _first_mismatch({"lhs": lhs.coeffs, "rhs": rhs.coeffs}, 0, order)
    return CheckReport(f"partial-sum[n={n}]", bad is None, {"n": n, "order": order}, bad)


def euler_first_sum_check(max_k: int, order: int) -> CheckReport:
    """[z^k] 1/(z;q)_oo equals 1/(q;q)_k for k <= max_k, up to q^order."""
    # 1/(z;q)_oo = prod_{i>=0} 1/(1 - z q^i), expanded row by row in z
    # i = 0 factor 1/(1-z): every z-power gets 1
    rows = [TruncatedSeries.one(order) for _ in range(max_k + 1)]
    for i in range(1, order + 1):
        # multiply by 1/(1 - z q^i): new[k] = old[k] + q^i new[k-1]
        for k in range(1, max_k + 1):
            rows[k] = rows[k] + rows[k - 1].shift_within(i)
    for k in range(max_k + 1):
        expected = invert_unit(pochhammer_finite(q(order), 1, k, order))
        bad = _first_mismatch({"product": rows[k].coeffs, "sum": expected.coeffs}, 0, order)
        if bad is not None:
            return CheckReport("euler-sum", False, {"max_k": max_k, "order": order}, dict(bad, k=k))
    return CheckReport("euler-sum", True, {"max_k": max_k, "order": order})


def phi_injection(parts: Sequence[int]) -> tuple[int, ...]:
    """Append a part 1."""
    return tuple(parts) + (1,)


def monotonicity_injection_check(n: int) -> CheckReport:
    """The map appending a 1 is injective, keeps L, and sends maex 1 to 0 and fixes other maex values."""
    images = set()
    src_total = img_total = 0
    for parts in raw_partitions(n):
        img = phi_injection(parts)
        if img in images:
            return CheckReport("monotonicity-injection", False, {"n": n}, {"partition": list(parts), "reason": "not injective"})
        images.add(img)
        m, mi = maex(parts), maex(img)
        expected = 0 if m == 1 else m
        if img[0] != parts[0] or mi != expected:
            return CheckReport(
                "monotonicity-injection", False, {"n": n}, {"partition": list(parts), "maex": m, "image_maex": mi}
            )
        src_total += parts[0] - m
        img_total += img[0] - mi
    target_total = sum(p[0] - maex(p) for p in raw_partitions(n + 1))
    ok = src_total <= img_total <= target_total
    return CheckReport(
        "monotonicity-injection",
        ok,
        {"n": n, "difference_n": src_total, "image_sum": img_total, "difference_n_plus_1": target_total},
        None if ok else {"n": n},
    )


def difference_monotone_check(max_n: int) -> CheckReport:
    """sigma-L - sigma-maex is weakly increasing on 1..max_n (exact integers)."""
    d = difference_series(max_n + 1).coeffs
    for n in range(1, max_n):
        if d[n + 1] < d[n]:
            return CheckReport("difference-monotone", False, {"max_n": max_n}, {"n": n, "d_n": d[n], "d_n_plus_1": d[n + 1]})
    return CheckReport("difference-monotone", True, {"max_n": max_n})


def expectation_check(max_n: int) -> CheckReport:
    """E_1 = E_2 = 1 and E_n > 1 for 3 <= n <= max_n."""
    st = stat_table(max_n)
    for n in range(1, max_n + 1):
        e = st.expectation(n)
        if (n <= 2 and e != 1) or (n >= 3 and not e > 1):
            return CheckReport("expectation", False, {"max_n": max_n}, {"n": n, "expectation": str(e)})
    return CheckReport("expectation", True, {"max_n": max_n, "E_max_n": str(st.expectation(max_n))})
