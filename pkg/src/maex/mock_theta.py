"""The mock theta functions sigma and sigma*, and identities around them.

Both functions are computed from two independent q-hypergeometric forms::

    sigma(q)  = sum_{n>=0} q^{n(n+1)/2} / (-q;q)_n  = 1 - sum_{n>=1} (-1)^n q^n (q;q)_{n-1}
    sigma*(q) = 2 sum_{n>=1} (-1)^n q^{n^2} / (q;q^2)_n = -2 sum_{n>=1} q^n (q^2;q^2)_{n-1}

The second forms are finite sums at roots of unity, which is what
:func:`root_of_unity_check` evaluates in ``Z[x]/Phi_N``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import IdentityMismatchError
from .report import CheckReport
from .series import TruncatedSeries, div_binomial, mul_binomial, t_substitute_exp

ZAGIER_T_COEFFICIENTS = (
    Fraction(2),
    Fraction(2),
    Fraction(5),
    Fraction(55, 3),
    Fraction(1073, 12),
    Fraction(32671, 60),
    Fraction(286333, 72),
)


# ---------------------------------------------------------------------------
# q-series forms


def sigma_hypergeometric(order: int) -> TruncatedSeries:
    """``sum_{n>=0} q^{n(n+1)/2} / (-q;q)_n``."""
    total = TruncatedSeries.zero(order)
    inv = TruncatedSeries.one(order)  # 1/(-q;q)_n
    n = 0
    while n * (n + 1) // 2 <= order:
        if n:
            inv = div_binomial(inv, -1, n)
        total = total + inv.shift_within(n * (n + 1) // 2)
        n += 1
    return total


def sigma_finite_form(order: int) -> TruncatedSeries:
    """``1 - sum_{n>=1} (-1)^n q^n (q;q)_{n-1}``."""
    cs = [0] * (order + 1)
    cs[0] = 1
    prod = TruncatedSeries.one(order)  # (q;q)_{n-1}
    for n in range(1, order + 1):
        sign = 1 if n % 2 else -1  # -(-1)^n
        pc = prod.coeffs
        for e in range(order - n + 1):
            if pc[e]:
                cs[e + n] += sign * pc[e]
        prod = mul_binomial(prod, 1, n)
    return TruncatedSeries(cs, "q")


def sigma_forms(order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    return sigma_hypergeometric(order), sigma_finite_form(order)


def sigma_series(order: int) -> TruncatedSeries:
    """sigma(q) to ``order``; raises if the two defining forms disagree."""
    a, b = sigma_forms(order)
    if a != b:
        raise IdentityMismatchError(f"sigma forms differ at q^{_first_difference(a, b)}")
    return a


def cohen_hypergeometric(order: int) -> TruncatedSeries:
    """``sum_{n>=1} (-1)^n q^{n^2} / (q;q^2)_n``."""
    total = TruncatedSeries.zero(order)
    inv = TruncatedSeries.one(order)  # 1/(q;q^2)_n
    n = 1
    while n * n <= order:
        inv = div_binomial(inv, 1, 2 * n - 1)
        term = inv.shift_within(n * n)
        total = total - term if n % 2 else total + term
        n += 1
    return total


def cohen_finite_form(order: int) -> TruncatedSeries:
    """``sum_{n>=1} q^n (q^2;q^2)_{n-1}`` (note the sign: this is -sigma*/2)."""
    cs = [0] * (order + 1)
    prod = TruncatedSeries.one(order)  # (q^2;q^2)_{n-1}
    for n in range(1, order + 1):
        pc = prod.coeffs
        for e in range(order - n + 1):
            if pc[e]:
                cs[e + n] += pc[e]
        if 2 * n <= order:
            prod = mul_binomial(prod, 1, 2 * n)
    return TruncatedSeries(cs, "q")


def sigma_star_forms(order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    return cohen_hypergeometric(order) * 2, cohen_finite_form(order) * -2


def sigma_star_series(order: int) -> TruncatedSeries:
    """sigma*(q) to ``order``; the internal agreement check is Cohen's identity."""
    a, b = sigma_star_forms(order)
    if a != b:
        raise IdentityMismatchError(f"sigma* forms differ at q^{_first_difference(a, b)}")
    return a


def _first_difference(a: TruncatedSeries, b: TruncatedSeries) -> int | None:
    for e, (x, y) in enumerate(zip(a.coeffs, b.coeffs)):
        if x != y:
            return e
    return None


class _GrowingCache:
    """Keeps the longest series computed so far and truncates on demand."""

    def __init__(self, build):
        self._build = build
        self._value: TruncatedSeries | None = None
        self._lock = threading.Lock()

    def get(self, order: int) -> TruncatedSeries:
        with self._lock:
            if self._value is None or self._value.order < order:
                target = order if self._value is None else max(order, 2 * self._value.order)
                self._value = self._build(target)
            return self._value.truncate(order)


sigma_cached = _GrowingCache(sigma_series)
sigma_star_cached = _GrowingCache(sigma_star_series)


def cohen_check(order: int) -> CheckReport:
    """Both forms of sigma* coincide up to ``order``."""
    name = "cohen"
    if order < 1:
        return CheckReport(name, True, {"order": order, "compared": 0})
    lhs = cohen_hypergeometric(order)
    rhs = -cohen_finite_form(order)
    bad = _first_difference(lhs, rhs)
    if bad is not None:
        return CheckReport(name, False, {"order": order}, {"exponent": bad, "lhs": str(lhs[bad]), "rhs": str(rhs[bad])})
    return CheckReport(name, True, {"order": order, "compared": order + 1})


def coefficient_range_report(order: int, bound: int = 2) -> dict:
    """Where sigma and sigma* leave the range ``[-bound, bound]``.

    The coefficients are known to be small but are not bounded by 2 in
    general: products of several primes congruent to 1 mod 24 give larger
    values. This is diagnostic output, not a theorem.
    """
    out = {}
    for label, s in (("sigma", sigma_cached.get(order)), ("sigma_star", sigma_star_cached.get(order))):
        big = [(e, c) for e, c in enumerate(s.coeffs) if abs(c) > bound]
        out[label] = {
            "max_abs": max(abs(c) for c in s.coeffs),
            "violations": [{"exponent": e, "coefficient": c} for e, c in big],
        }
    return out


# ---------------------------------------------------------------------------
# three-variable identity


def _add_term(d: dict, key, value):
    v = d.get(key, 0) + value
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def three_variable_lhs(x_degree: int, y_degree: int, order: int) -> dict:
    """Coefficients ``{(a, b, n): c}`` of ``sum_{n>=1} x^n q^{n^2} / (yq;q^2)_n``."""
    out: dict = {}
    n = 1
    while n <= x_degree and n * n <= order:
        cur = {(0, n * n): 1}
        for k in range(n):
            step = 2 * k + 1
            nxt: dict = {}
            for (b, e), c in cur.items():
                j = 0
                while b + j <= y_degree and e + j * step <= order:
                    _add_term(nxt, (b + j, e + j * step), c)
                    j += 1
            cur = nxt
        for (b, e), c in cur.items():
            _add_term(out, (n, b, e), c)
        n += 1
    return out


def three_variable_rhs(x_degree: int, y_degree: int, order: int) -> dict:
    """Coefficients of ``sum_{n>=1} x y^{n-1} q^n (-x q^2/y; q^2)_{n-1}``.

    The y-degree is capped only after expansion, because the factors lower
    it; a negative surviving y-power raises ``ValueError``.
    """
    out: dict = {}
    for n in range(1, order + 1):
        if x_degree < 1:
            break
        cur = {(1, n - 1, n): 1}
        for k in range(n - 1):
            shift = 2 + 2 * k
            nxt = dict(cur)
            for (a, b, e), c in cur.items():
                if a + 1 <= x_degree and e + shift <= order:
                    _add_term(nxt, (a + 1, b - 1, e + shift), c)
            cur = nxt
        for (a, b, e), c in cur.items():
            if b < 0:
                raise ValueError(f"negative y-power y^{b} survived in x^{a} q^{e}")
            if b <= y_degree:
                _add_term(out, (a, b, e), c)
    return out


def three_variable_specialized(x, y, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of the three-variable identity at exact numbers ``x``, ``y``."""
    x, y = Fraction(x), Fraction(y)
    if y == 0:
        raise ValueError("y must be nonzero")
    lhs = TruncatedSeries.zero(order)
    inv = TruncatedSeries.one(order)
    n = 1
    while n * n <= order:
        inv = div_binomial(inv, y, 2 * n - 1)
        lhs = lhs + (inv.shift_within(n * n) * x ** n)
        n += 1
    rhs = TruncatedSeries.zero(order)
    prod = TruncatedSeries.one(order)  # (-x q^2 / y; q^2)_{n-1}
    for n in range(1, order + 1):
        rhs = rhs + prod.shift_within(n) * (x * y ** (n - 1))
        if 2 * n <= order:
            prod = mul_binomial(prod, -x / y, 2 * n)
    return lhs, rhs


def _distinct_twice_statistics(parts) -> tuple[int, int] | None:
    """(#distinct parts, largest part) if the largest part occurs once and every other part twice."""
    counts: dict = {}
    for p in parts:
        counts[p] = counts.get(p, 0) + 1
    largest = parts[0]
    if counts[largest] != 1:
        return None
    if any(c != 2 for p, c in counts.items() if p != largest):
        return None
    return len(counts), largest


def three_variable_combinatorial(x_degree: int, y_degree: int, order: int) -> dict:
    """Brute-force partition count interpreting both sides of the identity."""
    from .partitions import raw_partitions

    out: dict = {}
    for n in range(1, order + 1):
        for parts in raw_partitions(n):
            st = _distinct_twice_statistics(parts)
            if st is None:
                continue
            a, largest = st
            b = largest - a
            if a <= x_degree and b <= y_degree:
                _add_term(out, (a, b, n), 1)
    return out


def three_variable_identity_check(
    x_degree: int = 6, y_degree: int = 6, order: int = 40, specialization_order: int = 200, combinatorial: bool = True
) -> list[CheckReport]:
    reports = []
    lhs = three_variable_lhs(x_degree, y_degree, order)
    rhs = three_variable_rhs(x_degree, y_degree, order)
    params = {"x_degree": x_degree, "y_degree": y_degree, "order": order}
    reports.append(_compare_dicts("prop2.1-trivariate", lhs, rhs, params))
    if combinatorial:
        comb = three_variable_combinatorial(x_degree, y_degree, order)
        reports.append(_compare_dicts("prop2.1-combinatorial", lhs, comb, params))
    sl, sr = three_variable_specialized(-1, 1, specialization_order)
    cohen = cohen_hypergeometric(specialization_order)
    bad = _first_difference(sl, sr)
    if bad is None:
        bad = _first_difference(sl, cohen)
    if bad is None:
        bad = _first_difference(sr, -cohen_finite_form(specialization_order))
    sp = {"x": -1, "y": 1, "order": specialization_order}
    reports.append(
        CheckReport("prop2.1-specialization", bad is None, sp, None if bad is None else {"exponent": bad})
    )
    return reports


def _compare_dicts(name: str, a: dict, b: dict, params: dict) -> CheckReport:
    keys = sorted(set(a) | set(b), key=lambda k: (k[2], k[0], k[1]))
    for k in keys:
        if a.get(k, 0) != b.get(k, 0):
            return CheckReport(
                name, False, params, {"x": k[0], "y": k[1], "q": k[2], "lhs": a.get(k, 0), "rhs": b.get(k, 0)}
            )
    return CheckReport(name, True, dict(params, terms=len(keys)))


# ---------------------------------------------------------------------------
# theta series


def kronecker12(a: int) -> int:
    """The character ``(12/a)``: 1 on a = +-1, -1 on a = +-5 (mod 12), else 0."""
    r = a % 12
    if r in (1, 11):
        return 1
    if r in (5, 7):
        return -1
    return 0


def theta_lattice_sum(max_exponent: int) -> list[int]:
    """Coefficients of ``sum_{a > 6|b|} (12/a) (-1)^b q^{a^2 - 24 b^2}`` up to ``max_exponent``."""
    cs = [0] * (max_exponent + 1)
    b = 0
    # a > 6|b| forces a^2 - 24 b^2 > 12 b^2
    while 12 * b * b < max_exponent:
        for sb in ((b, -b) if b else (0,)):
            amax = isqrt(max_exponent + 24 * b * b)
            for a in range(6 * b + 1, amax + 1):
                e = a * a - 24 * b * b
                if e <= max_exponent:
                    cs[e] += kronecker12(a) * (-1) ** (sb % 2)
        b += 1
    return cs


def theta_expansion_check(max_exponent: int) -> CheckReport:
    """``q sigma(q^24)`` against the lattice sum, exponents ``0..max_exponent``."""
    lattice = theta_lattice_sum(max_exponent)
    sig = sigma_cached.get(max(0, (max_exponent - 1) // 24))
    series = [0] * (max_exponent + 1)
    for m, c in enumerate(sig.coeffs):
        if 24 * m + 1 <= max_exponent:
            series[24 * m + 1] = c
    params = {"max_exponent": max_exponent}
    for e in range(max_exponent + 1):
        if lattice[e] != series[e]:
            return CheckReport("theta", False, params, {"exponent": e, "lattice": lattice[e], "series": series[e]})
    return CheckReport("theta", True, params)


# ---------------------------------------------------------------------------
# roots of unity


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    """Exact division of integer polynomials by a monic divisor (low-to-high coefficients)."""
    num = list(num)
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    dd = len(den) - 1
    if len(num) <= dd:
        return [], _poly_trim(num)
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    return quot, _poly_trim(num[:dd])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first, by dividing x^n - 1 by Phi_d for d | n, d < n."""
    if n < 1:
        raise ValueError("n must be positive")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p, r = _poly_divmod(p, list(cyclotomic_polynomial(d)))
            if r:
                raise ArithmeticError("non-exact cyclotomic division")
    return tuple(p)


class CyclotomicElement:
    """Exact element of ``Z[x]/Phi_N``; ``x`` plays the role of a primitive N-th root of unity."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs=()):
        phi = cyclotomic_polynomial(N)
        _, r = _poly_divmod([int(c) for c in coeffs], list(phi))
        deg = len(phi) - 1
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "coeffs", tuple(r + [0] * (deg - len(r))))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicElement is immutable")

    @classmethod
    def root_power(cls, N: int, e: int) -> "CyclotomicElement":
        """``zeta**e``; negative exponents are taken mod N."""
        e %= N
        return cls(N, [0] * e + [1])

    @classmethod
    def constant(cls, N: int, c: int) -> "CyclotomicElement":
        return cls(N, [c])

    def _coerce(self, other) -> "CyclotomicElement":
        if isinstance(other, int):
            return CyclotomicElement.constant(self.N, other)
        if isinstance(other, CyclotomicElement):
            if other.N != self.N:
                raise ValueError("elements of different cyclotomic rings")
            return other
        raise TypeError(type(other).__name__)

    def __add__(self, other):
        o = self._coerce(other)
        return CyclotomicElement(self.N, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.N, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        prod = [0] * (len(self.coeffs) + len(o.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        return CyclotomicElement(self.N, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("use root_power for inverses")
        result = CyclotomicElement.constant(self.N, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicElement.constant(self.N, other)
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        return self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def __repr__(self):
        return f"CyclotomicElement(N={self.N}, coeffs={list(self.coeffs)})"


def _finite_qsum(N: int, q_exp: int, base_exp: int, first: int):
    """``sum_{n>=1} s_n zeta^(n q_exp) (zeta^base_exp; zeta^base_exp)_{n-1}``; stops once the product vanishes.

    ``first`` selects the sign pattern: 1 for ``(-1)^n``, 0 for all plus.
    """
    total = CyclotomicElement.constant(N, 0)
    prod = CyclotomicElement.constant(N, 1)
    n = 1
    while not prod.is_zero():
        if n > N + 1:
            raise ArithmeticError("finite sum failed to terminate")
        term = CyclotomicElement.root_power(N, n * q_exp) * prod
        total = total + (-term if first and n % 2 else term)
        prod = prod * (1 - CyclotomicElement.root_power(N, n * base_exp))
        n += 1
    return total


def sigma_at_root(N: int) -> CyclotomicElement:
    """sigma(zeta) via ``1 - sum (-1)^n zeta^n (zeta;zeta)_{n-1}``."""
    return 1 - _finite_qsum(N, 1, 1, first=1)


def sigma_star_at_inverse_root(N: int) -> CyclotomicElement:
    """sigma*(zeta^-1) via ``-2 sum zeta^-n (zeta^-2;zeta^-2)_{n-1}``."""
    return _finite_qsum(N, -1, -2, first=0) * -2


def root_of_unity_check(max_order: int) -> list[CheckReport]:
    """``sigma(zeta) + sigma*(zeta^-1) = 0`` in ``Z[x]/Phi_N`` for every ``1 <= N <= max_order``."""
    reports = []
    for N in range(1, max_order + 1):
        s = sigma_at_root(N)
        t = sigma_star_at_inverse_root(N)
        r = s + t
        params = {"N": N, "sigma": list(s.coeffs), "sigma_star_inverse": list(t.coeffs)}
        reports.append(
            CheckReport(f"roots-of-unity[N={N}]", r.is_zero(), params, None if r.is_zero() else {"residue": list(r.coeffs)})
        )
    return reports


# ---------------------------------------------------------------------------
# t-expansion at q = exp(-t)


def zagier_t_expansion(order: int, extra_terms: int = 0) -> TruncatedSeries:
    """``-sigma*(e^-t) = 2 sum_{n>=1} e^{-nt} (e^{-2t};e^{-2t})_{n-1}`` as an exact t-series.

    The n-th summand has t-valuation n-1, so ``order + 1`` summands fix the
    coefficients of ``t^0..t^order``.
    """
    total = TruncatedSeries.zero(order, "t")
    nterms = order + 1 + extra_terms
    deg = nterms * nterms
    prod = TruncatedSeries.one(deg)  # (q^2;q^2)_{n-1}, exact polynomial up to deg
    for n in range(1, nterms + 1):
        total = total + t_substitute_exp(prod.shift_within(n), order)
        prod = mul_binomial(prod, 1, 2 * n)
    return total * 2


def zagier_t_check(order: int = 6) -> list[CheckReport]:
    reports = []
    series = zagier_t_expansion(order)
    known = min(order + 1, len(ZAGIER_T_COEFFICIENTS))
    mism = [j for j in range(known) if series[j] != ZAGIER_T_COEFFICIENTS[j]]
    reports.append(
        CheckReport(
            "zagier-t-coefficients",
            not mism,
            {"order": order, "coefficients": [str(c) for c in series.coeffs]},
            {"power": mism[0], "computed": str(series[mism[0]]), "expected": str(ZAGIER_T_COEFFICIENTS[mism[0]])} if mism else None,
        )
    )
    more = zagier_t_expansion(order, extra_terms=4)
    stable = more == series
    reports.append(CheckReport("zagier-t-stability", stable, {"order": order, "extra_terms": 4}))
    sigma1 = sigma_star_at_inverse_root(1)
    reports.append(CheckReport("zagier-t-constant", series[0] == -sigma1.coeffs[0], {"sigma_star_at_1": sigma1.coeffs[0]}))
    return reports
