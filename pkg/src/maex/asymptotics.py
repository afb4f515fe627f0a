"""Numeric trend diagnostics for the asymptotic formulas.

Exact statistics come from :func:`maex.partitions.stat_table`; floats only
enter through the closed-form predictions, and every ratio is formed as an
exact rational before rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .partitions import stat_table
from .report import CheckReport

EULER_GAMMA = 0.5772156649015329
DEFAULT_PROBES = (500, 1000, 2000)
DEFAULT_T_GRID = (0.5, 0.2, 0.1, 0.05, 0.02)


def _hardy_ramanujan(n: int) -> float:
    # e^{pi sqrt(2n/3)} / (4 sqrt3 n)
    return math.exp(math.pi * math.sqrt(2 * n / 3)) / (4 * math.sqrt(3) * n)


def predict_p(n: int) -> float:
    if n < 1:
        raise ValueError("n must be positive")
    return _hardy_ramanujan(n)


def predict_diff(n: int) -> float:
    """Leading term of sigma-L(n) - sigma-maex(n); the same expression as for p(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return _hardy_ramanujan(n)


def predict_sigmaL(n: int) -> float:
    """Kessler-Livingston leading term for the sum of largest parts."""
    if n < 1:
        raise ValueError("n must be positive")
    return (
        (math.log(6 * n / math.pi**2) + 2 * EULER_GAMMA)
        / (4 * math.pi * math.sqrt(2 * n))
        * math.exp(math.pi * math.sqrt(2 * n / 3))
    )


def exact_ratio(exact, predicted: float) -> float:
    return float(Fraction(exact) / Fraction(predicted))


@dataclass(frozen=True)
class AsymptoticReport:
    n: int
    exact_value: Fraction
    predicted_value: float
    ratio: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "exact": str(self.exact_value),
            "predicted": repr(self.predicted_value),
            "ratio": repr(self.ratio),
        }


def _report(n: int, exact, predicted: float) -> AsymptoticReport:
    return AsymptoticReport(n, Fraction(exact), predicted, exact_ratio(exact, predicted))


def sigmaL_report(n: int) -> AsymptoticReport:
    return _report(n, stat_table(n).sigma_L[n], predict_sigmaL(n))


def diff_report(n: int) -> AsymptoticReport:
    return _report(n, stat_table(n).difference(n), predict_diff(n))


def expectation(n: int) -> Fraction:
    """(sigma-L(n) - sigma-maex(n)) / p(n), exactly."""
    return stat_table(n).expectation(n)


def _strictly_decreasing(xs: Sequence[float]) -> bool:
    return all(b < a for a, b in zip(xs, xs[1:]))


def trend_check(kind: str, probes: Sequence[int] = DEFAULT_PROBES) -> CheckReport:
    """|ratio - 1| strictly decreases across the probe points."""
    if kind not in ("diff", "sigmaL"):
        raise ValueError(f"unknown asymptotic kind {kind!r}")
    probes = sorted(probes)
    # one shared series prefix for every probe
    table = stat_table(probes[-1])
    if kind == "diff":
        reps = [_report(n, table.difference(n), predict_diff(n)) for n in probes]
    else:
        reps = [_report(n, table.sigma_L[n], predict_sigmaL(n)) for n in probes]
    errs = [abs(r.ratio - 1) for r in reps]
    ok = _strictly_decreasing(errs)
    return CheckReport(
        f"asymptotic-{kind}",
        ok,
        {"probes": [r.to_dict() for r in reps], "abs_error": [repr(e) for e in errs]},
        None if ok else {"abs_error": [repr(e) for e in errs]},
    )


def inverse_euler_product(t: float) -> float:
    """log of 1/(e^-t; e^-t)_oo, using at least 50/t factors."""
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    nfactors = math.ceil(50 / t)
    return -math.fsum(math.log1p(-math.exp(-k * t)) for k in range(1, nfactors + 1))


def eta_prediction_log(t: float) -> float:
    """log of sqrt(t / 2pi) e^{pi^2 / 6t}."""
    return 0.5 * math.log(t / (2 * math.pi)) + math.pi**2 / (6 * t)


@dataclass(frozen=True)
class EtaPoint:
    t: float
    ratio: float


def eta_inversion_check(t_values: Sequence[float] = DEFAULT_T_GRID) -> CheckReport:
    """Ratio of 1/(e^-t;e^-t)_oo to its inversion-formula prediction along a decreasing t-grid."""
    ts = sorted(t_values, reverse=True)
    pts = [EtaPoint(t, math.exp(inverse_euler_product(t) - eta_prediction_log(t))) for t in ts]
    errs = [abs(p.ratio - 1) for p in pts]
    ok = all(math.isfinite(p.ratio) and p.ratio > 0 for p in pts) and _strictly_decreasing(errs)
    return CheckReport(
        "eta-inversion",
        ok,
        {"points": [{"t": p.t, "ratio": repr(p.ratio)} for p in pts]},
        None if ok else {"abs_error": [repr(e) for e in errs]},
    )
