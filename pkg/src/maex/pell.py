"""The coefficients T(n) on 6Z+1, computed three independent ways.

* :func:`t_pell` counts unit-orbits of solutions of ``u^2 - 6 v^2 = n``,
  signed by the class of ``u + 3v`` mod 12;
* :func:`t_multiplicative` multiplies prime-power values over a signed
  factorisation of ``n``;
* :func:`t_from_qseries` reads coefficients of ``q sigma(q^24)`` and
  ``q^-1 sigma*(q^24)`` (only defined on 24Z+1).

Two solutions are equivalent when ``u' + v' sqrt6 = +-(u + v sqrt6) eps^k``
with ``eps = 5 + 2 sqrt6`` the fundamental unit of norm 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from sympy import factorint

from .errors import BudgetExceededError
from .mock_theta import kronecker12, sigma_cached, sigma_star_cached
from .report import CheckReport

UNIT = (5, 2)
RHO = 5 + 2 * 6 ** 0.5
DEFAULT_PELL_BUDGET = 4801
DEFAULT_SERIES_BUDGET = 500


@dataclass(frozen=True)
class PellSolution:
    u: int
    v: int

    @property
    def n(self) -> int:
        return self.u * self.u - 6 * self.v * self.v

    def times_unit(self, k: int = 1) -> "PellSolution":
        """Multiply ``u + v sqrt6`` by ``eps**k`` (``k = +-1``)."""
        u, v = self.u, self.v
        if k == 1:
            return PellSolution(5 * u + 12 * v, 2 * u + 5 * v)
        if k == -1:
            return PellSolution(5 * u - 12 * v, -2 * u + 5 * v)
        raise ValueError("k must be +1 or -1")

    def reduced(self) -> "PellSolution":
        """Orbit representative of minimal |u|, normalised to u > 0."""
        s = self
        while True:
            up, down = s.times_unit(1), s.times_unit(-1)
            if abs(up.u) < abs(s.u):
                s = up
            elif abs(down.u) < abs(s.u):
                s = down
            else:
                break
        if s.u < 0 or (s.u == 0 and s.v < 0):
            s = PellSolution(-s.u, -s.v)
        return s

    def residue_sign(self) -> int:
        """+1 if u + 3v = +-1 (mod 12), -1 if +-5, 0 otherwise."""
        return kronecker12(self.u + 3 * self.v)


@dataclass(frozen=True)
class PellClassSet:
    n: int
    representatives: tuple[PellSolution, ...]
    plus_count: int
    minus_count: int

    @property
    def t_value(self) -> int:
        return self.plus_count - self.minus_count


def _check_admissible(n: int) -> None:
    if n == 0 or n % 6 != 1:
        raise ValueError(f"T(n) is defined for n = 1 (mod 6), n != 0; got {n}")


def search_bound(n: int) -> int:
    return isqrt(int(abs(n) * RHO / 6)) + 2


def enumerate_classes(n: int, budget: int = DEFAULT_PELL_BUDGET) -> PellClassSet:
    """One representative per unit-orbit of solutions of ``u^2 - 6v^2 = n``."""
    _check_admissible(n)
    if abs(n) > budget:
        raise BudgetExceededError(f"|n| = {abs(n)} exceeds the Pell search budget {budget}")
    reps = set()
    for v in range(-search_bound(n), search_bound(n) + 1):
        u2 = n + 6 * v * v
        if u2 < 0:
            continue
        u = isqrt(u2)
        if u * u != u2:
            continue
        for uu in {u, -u}:
            sol = PellSolution(uu, v)
            red = sol.reduced()
            # residue class must be constant along the orbit
            if not (
                sol.residue_sign() == red.residue_sign()
                and sol.times_unit(1).residue_sign() == sol.residue_sign()
                and PellSolution(-uu, -v).residue_sign() == sol.residue_sign()
            ):
                raise ArithmeticError(f"u + 3v class not invariant on the orbit of {sol}")
            reps.add(red)
    ordered = tuple(sorted(reps, key=lambda s: (s.u, s.v)))
    plus = sum(1 for s in ordered if s.residue_sign() == 1)
    minus = sum(1 for s in ordered if s.residue_sign() == -1)
    return PellClassSet(n, ordered, plus, minus)


def t_pell(n: int, budget: int = DEFAULT_PELL_BUDGET) -> int:
    return enumerate_classes(n, budget).t_value


@dataclass(frozen=True)
class SignedFactorization:
    n: int
    factors: tuple[tuple[int, int], ...]


def signed_factorization(n: int) -> SignedFactorization:
    """Write n as a product of p^e with p = 1 (mod 6) prime or p = -(prime = 5 mod 6)."""
    _check_admissible(n)
    factors = []
    prod = 1
    for p, e in sorted(factorint(abs(n)).items()):
        if p % 6 == 1:
            sp = p
        elif p % 6 == 5:
            sp = -p
        else:
            raise ArithmeticError(f"unexpected prime {p} in {n}")
        factors.append((sp, e))
        prod *= sp ** e
    if prod != n:
        raise ArithmeticError(f"signed factors of {n} multiply to {prod}")
    return SignedFactorization(n, tuple(factors))


@lru_cache(maxsize=None)
def t_prime_sign(p: int) -> int:
    """T(p) for a signed prime p = 1 (mod 24), which is +-2; read off the Pell classes."""
    t = t_pell(p, budget=abs(p))
    if t not in (2, -2):
        raise ArithmeticError(f"T({p}) = {t}, expected +-2")
    return t


def t_prime_power(p: int, e: int) -> int:
    r = p % 24
    if e == 0:
        return 1
    if r != 1:
        if e % 2:
            return 0
        if r in (13, 19):
            return 1
        if r == 7:
            return (-1) ** (e // 2)
        raise ArithmeticError(f"signed prime {p} has residue {r} mod 24")
    if t_prime_sign(p) == 2:
        return e + 1
    return (-1) ** e * (e + 1)


def t_multiplicative(n: int) -> int:
    t = 1
    for p, e in signed_factorization(n).factors:
        t *= t_prime_power(p, e)
        if t == 0:
            break
    return t


def t_from_qseries(n: int, budget: int = DEFAULT_SERIES_BUDGET) -> int:
    """T(n) for n = 1 (mod 24) from the sigma / sigma* expansions."""
    if n % 24 != 1:
        raise ValueError(f"the q-series only determine T on 24Z+1; got {n}")
    m = (n - 1) // 24 if n > 0 else (1 - n) // 24
    if m > budget:
        raise BudgetExceededError(f"needs series order {m} > budget {budget}")
    if n > 0:
        return sigma_cached.get(max(m, 1))[m]
    return sigma_star_cached.get(max(m, 1))[m]


def s_star(n: int, evaluator=t_multiplicative) -> int:
    """Coefficient S*(n) of sigma*(q) = 2 sum S*(n) q^n, as T(1 - 24n) / 2."""
    if n < 1:
        raise ValueError("n must be positive")
    t = evaluator(1 - 24 * n)
    if t % 2:
        raise ArithmeticError(f"T({1 - 24 * n}) = {t} is odd")
    return t // 2


def pell_agreement_check(bound: int = 1201, budget: int = DEFAULT_PELL_BUDGET) -> list[CheckReport]:
    """Triple agreement on 24Z+1, and vanishing of T off 24Z+1, for |n| <= bound."""
    reports = []
    mism = None
    count = 0
    for n in range(-bound, bound + 1):
        if n % 24 != 1:
            continue
        a, b, c = t_pell(n, budget), t_multiplicative(n), t_from_qseries(n)
        count += 1
        if not a == b == c and mism is None:
            mism = {"n": n, "pell": a, "multiplicative": b, "qseries": c}
    reports.append(CheckReport("pell-agreement", mism is None, {"bound": bound, "compared": count}, mism))
    mism = None
    count = 0
    for n in range(-bound, bound + 1):
        if n == 0 or n % 6 != 1 or n % 24 == 1:
            continue
        a, b = t_pell(n, budget), t_multiplicative(n)
        count += 1
        if (a != 0 or b != 0) and mism is None:
            mism = {"n": n, "pell": a, "multiplicative": b}
    reports.append(CheckReport("pell-vanishing-off-24Z+1", mism is None, {"bound": bound, "compared": count}, mism))
    return reports
