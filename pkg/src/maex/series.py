"""Exact truncated power series over the rationals.

Every series carries an explicit truncation order ``N``: the coefficients of
exponents ``0..N`` are exact, nothing is claimed beyond. Binary operations
return the smaller of the two orders.

Coefficients are Python ``int`` where they are integral and
``fractions.Fraction`` otherwise, so the same type serves integer q-series and
the rational t-expansions produced by :func:`t_substitute_exp`.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence, Union

from .errors import DivergentProductError, SingularSeriesError, VariableMismatchError

Coeff = Union[int, Fraction]

VARIABLES = ("q", "t")


def _exact(c) -> Coeff:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"series coefficients must be int or Fraction, got {type(c).__name__}")


class TruncatedSeries:
    """Immutable power series ``c_0 + c_1 v + ... + c_N v^N + O(v^(N+1))``."""

    __slots__ = ("variable", "coeffs")

    def __init__(self, coeffs: Iterable = (), variable: str = "q", order: int | None = None):
        if variable not in VARIABLES:
            raise ValueError(f"unknown formal variable {variable!r}")
        cs = [_exact(c) for c in coeffs]
        if order is None:
            if not cs:
                raise ValueError("order is required for an empty coefficient list")
        else:
            if order < 0:
                raise ValueError("order must be nonnegative")
            if len(cs) > order + 1:
                del cs[order + 1:]
            else:
                cs.extend([0] * (order + 1 - len(cs)))
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def _raw(cls, coeffs: list, variable: str) -> "TruncatedSeries":
        # Trusted constructor: coeffs already normalised and exact.
        s = object.__new__(cls)
        object.__setattr__(s, "variable", variable)
        object.__setattr__(s, "coeffs", tuple(coeffs))
        return s

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def zero(cls, order: int, variable: str = "q") -> "TruncatedSeries":
        return cls((), variable, order)

    @classmethod
    def one(cls, order: int, variable: str = "q") -> "TruncatedSeries":
        return cls((1,), variable, order)

    @classmethod
    def monomial(cls, coeff, exponent: int, order: int, variable: str = "q") -> "TruncatedSeries":
        """``coeff * v**exponent`` known exactly up to ``order``."""
        if exponent < 0:
            raise ValueError("negative exponents are not supported")
        cs = [0] * (order + 1)
        if exponent <= order:
            cs[exponent] = _exact(coeff)
        return cls(cs, variable, order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Coeff:
        if n < 0:
            raise IndexError("negative exponent")
        if n > self.order:
            raise IndexError(f"coefficient {n} lies beyond truncation order {self.order}")
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.variable == other.variable and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.variable, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if e == 0:
                terms.append(str(c))
            elif e == 1:
                terms.append(f"{c}*{self.variable}")
            else:
                terms.append(f"{c}*{self.variable}^{e}")
            if len(terms) == 8:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"TruncatedSeries({body} + O({self.variable}^{self.order + 1}))"

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for e, c in enumerate(self.coeffs):
            if c != 0:
                return e
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return TruncatedSeries._raw(list(self.coeffs[: order + 1]), self.variable)

    def shift(self, s: int) -> "TruncatedSeries":
        """Multiply by ``v**s``; the known range grows by ``s``."""
        if s < 0:
            raise ValueError("negative shift")
        return TruncatedSeries._raw([0] * s + list(self.coeffs), self.variable)

    def shift_within(self, s: int, order: int | None = None) -> "TruncatedSeries":
        """Multiply by ``v**s`` and truncate back to ``order`` (default: own order)."""
        order = self.order if order is None else order
        cs = [0] * (order + 1)
        for e in range(max(0, min(order - s, self.order) + 1)):
            cs[e + s] = self.coeffs[e]
        return TruncatedSeries._raw(cs, self.variable)

    def scale(self, c) -> "TruncatedSeries":
        c = _exact(c)
        return TruncatedSeries._raw([_exact(c * x) for x in self.coeffs], self.variable)

    def __neg__(self):
        return TruncatedSeries._raw([-x for x in self.coeffs], self.variable)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        if isinstance(other, (int, Fraction)):
            cs = list(self.coeffs)
            cs[0] = _exact(cs[0] + other)
            return TruncatedSeries._raw(cs, self.variable)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (TruncatedSeries, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__


def _check_same_variable(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.variable != b.variable:
        raise VariableMismatchError(f"cannot combine series in {a.variable!r} and {b.variable!r}")


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_same_variable(a, b)
    n = min(a.order, b.order) + 1
    return TruncatedSeries._raw([_exact(x + y) for x, y in zip(a.coeffs[:n], b.coeffs[:n])], a.variable)


def _nonzero(cs: Sequence, limit: int) -> list:
    return [(i, c) for i, c in enumerate(cs[: limit + 1]) if c]


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order."""
    _check_same_variable(a, b)
    order = min(a.order, b.order)
    na = _nonzero(a.coeffs, order)
    nb = _nonzero(b.coeffs, order)
    if len(na) > len(nb):
        na, nb = nb, na
    out = [0] * (order + 1)
    for i, c in na:
        lim = order - i
        for j, d in nb:
            if j > lim:
                break
            out[i + j] += c * d
    return TruncatedSeries._raw([_exact(x) for x in out], a.variable)


def invert_unit(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    a0 = a.coeffs[0]
    if a0 == 0:
        raise SingularSeriesError("constant term is zero; series is not a unit")
    order = a.order
    tail = [(k, c) for k, c in _nonzero(a.coeffs, order) if k >= 1]
    inv0 = _exact(Fraction(1) / a0) if a0 not in (1, -1) else a0
    b = [0] * (order + 1)
    b[0] = inv0
    for n in range(1, order + 1):
        s = 0
        for k, c in tail:
            if k > n:
                break
            s += c * b[n - k]
        b[n] = _exact(-s * inv0)
    return TruncatedSeries._raw(b, a.variable)


def mul_binomial(s: TruncatedSeries, coeff, shift: int) -> TruncatedSeries:
    """``s * (1 - coeff * v**shift)`` in O(N)."""
    if shift < 1:
        raise ValueError("shift must be positive")
    coeff = _exact(coeff)
    cs = list(s.coeffs)
    for i in range(len(cs) - 1, shift - 1, -1):
        if cs[i - shift]:
            cs[i] = _exact(cs[i] - coeff * cs[i - shift])
    return TruncatedSeries._raw(cs, s.variable)


def div_binomial(s: TruncatedSeries, coeff, shift: int) -> TruncatedSeries:
    """``s / (1 - coeff * v**shift)`` in O(N)."""
    if shift < 1:
        raise ValueError("shift must be positive")
    coeff = _exact(coeff)
    cs = list(s.coeffs)
    for i in range(shift, len(cs)):
        if cs[i - shift]:
            cs[i] = _exact(cs[i] + coeff * cs[i - shift])
    return TruncatedSeries._raw(cs, s.variable)


def _as_monomial(a: TruncatedSeries):
    nz = _nonzero(a.coeffs, a.order)
    if len(nz) == 1:
        e, c = nz[0]
        return c, e
    return None


def pochhammer_finite(a: TruncatedSeries, step: int, n: int, order: int | None = None) -> TruncatedSeries:
    """``prod_{k=0}^{n-1} (1 - a * v**(k*step))`` truncated at ``order``.

    With ``a = q`` and ``step = 1`` this is ``(q;q)_n``; ``a = q**2, step = 2``
    gives ``(q^2;q^2)_n``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if step < 1:
        raise ValueError("step must be a positive integer")
    order = a.order if order is None else order
    if n == 0:
        return TruncatedSeries.one(order, a.variable)
    order = min(order, a.order)
    a = a.truncate(order)
    result = TruncatedSeries.one(order, a.variable)
    mono = _as_monomial(a)
    if a.is_zero():
        return result
    v = a.valuation()
    for k in range(n):
        if v + k * step > order:
            break
        if mono is not None:
            c, e = mono
            if e + k * step == 0:
                result = result.scale(1 - c)
            else:
                result = mul_binomial(result, c, e + k * step)
        else:
            result = mul(result, TruncatedSeries.one(order, a.variable) - a.shift_within(k * step))
    return result


def pochhammer_infinite(a: TruncatedSeries, step: int, order: int | None = None) -> TruncatedSeries:
    """``(a; v^step)_oo`` truncated at ``order``; ``a`` must have valuation at least 1."""
    if step < 1:
        raise ValueError("step must be a positive integer")
    order = a.order if order is None else min(order, a.order)
    v = a.truncate(order).valuation()
    if v is None:
        return TruncatedSeries.one(order, a.variable)
    if v == 0:
        raise DivergentProductError("argument has a nonzero constant term; the product does not converge")
    nfactors = (order - v) // step + 1
    return pochhammer_finite(a, step, nfactors, order)


def t_substitute_exp(q_series: TruncatedSeries, order: int) -> TruncatedSeries:
    """Substitute ``q = exp(-t)`` into a q-*polynomial*, returning a t-series.

    Every stored coefficient of ``q_series`` is treated as exact and every
    exponent beyond its order as zero; the caller guarantees that this really
    is a polynomial.
    """
    if q_series.variable != "q":
        raise VariableMismatchError("t_substitute_exp expects a series in q")
    terms = _nonzero(q_series.coeffs, q_series.order)
    out = []
    for j in range(order + 1):
        s = sum(c * (-m) ** j for m, c in terms)
        out.append(_exact(Fraction(s, factorial(j))))
    return TruncatedSeries._raw(out, "t")


class BivariateSeries:
    """Integer coefficients ``g(k, n)`` of ``sum g(k,n) z^k q^n`` on a finite grid."""

    __slots__ = ("z_degree", "q_order", "grid")

    def __init__(self, grid: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in grid)
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("grid must be a nonempty rectangle")
        for k, row in enumerate(rows):
            if any(row[n] for n in range(min(k + 1, len(row)))):
                raise ValueError(f"g({k}, n) must vanish for n <= {k}")
        object.__setattr__(self, "grid", rows)
        object.__setattr__(self, "z_degree", len(rows) - 1)
        object.__setattr__(self, "q_order", len(rows[0]) - 1)

    def __setattr__(self, name, value):
        raise AttributeError("BivariateSeries is immutable")

    def __getitem__(self, kn) -> int:
        k, n = kn
        return self.grid[k][n]

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.grid == other.grid

    def __hash__(self):
        return hash(self.grid)

    def __repr__(self):
        return f"BivariateSeries(z_degree={self.z_degree}, q_order={self.q_order})"

    def column(self, n: int) -> list[int]:
        return [row[n] for row in self.grid]

    def z_derivative_at_one(self) -> TruncatedSeries:
        """``[d/dz G(z,q)]_{z=1}`` as a q-series, i.e. ``sum_k k g(k,n)`` per n."""
        return TruncatedSeries(
            [sum(k * row[n] for k, row in enumerate(self.grid)) for n in range(self.q_order + 1)],
            "q",
        )
