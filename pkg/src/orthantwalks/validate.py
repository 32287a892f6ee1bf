"""Cross-checks of exact counts against the closed-form leading terms.

A validation run counts walks in scaled mode, evaluates the closed-form
estimate at each length, and measures the ratio count/estimate.  The leading
term carries a relative error O(1/n), so a run passes when the final ratio is
within tolerance of 1 and the log-log slope of |ratio - 1| against n is at
most -0.8.

Ratios below the scaled-arithmetic noise floor (~1e-11) are excluded from the
slope fit: classes whose relative error decays exponentially bottom out at
the arithmetic noise long before n_max, and a flat noise plateau says nothing
about the 1/n behaviour the fit is after.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .counting import count_walks
from .gb import GBParams, gb_estimate, gb_excursion_estimate
from .xfloat import XFloat

FIT_MIN_N = 50
NOISE_FLOOR = 1e-11


@dataclass(frozen=True)
class ValidationReport:
    """Measured agreement between exact counts and a closed-form estimate."""

    params: GBParams
    what: str
    n_max: int
    tolerance: float
    ns: tuple[int, ...]
    ratios: tuple[float, ...]
    final_ratio: float
    error_slope: Optional[float]
    passed: bool

    def summary(self) -> dict:
        return {
            "what": self.what,
            "a": str(self.params.a),
            "b": str(self.params.b),
            "start": [self.params.i, self.params.j],
            "n_max": self.n_max,
            "tolerance": self.tolerance,
            "final_ratio": self.final_ratio,
            "error_slope": self.error_slope,
            "passed": self.passed,
        }


def _fit_slope(ns, errors) -> Optional[float]:
    points = [(math.log(n), math.log(e)) for n, e in zip(ns, errors)
              if n >= FIT_MIN_N and e > NOISE_FLOOR]
    if len(points) < 2:
        return None  # everything at the noise floor: decay faster than any fit
    mean_x = sum(x for x, _ in points) / len(points)
    mean_y = sum(y for _, y in points) / len(points)
    sxx = sum((x - mean_x) ** 2 for x, _ in points)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in points)
    if sxx == 0:
        return None
    return sxy / sxx


def _ratio(count: XFloat, estimate: XFloat) -> Optional[float]:
    if estimate.is_zero() or count.is_zero():
        return None
    return float(count / estimate)


def validate_totals(params: GBParams, n_max: int, tolerance: float,
                    guard: int = 0) -> ValidationReport:
    """Compare total confined-walk counts against kappa * V * rho**n / n**alpha."""
    if n_max < 50:
        raise ValueError("validation needs n_max >= 50 to clear the transient regime")
    kwargs = {"guard": guard} if guard else {}
    table = count_walks(params.model(), (params.i, params.j), n_max,
                        mode="scaled", **kwargs)
    ns, ratios = [], []
    for n in range(1, n_max + 1):
        r = _ratio(table.total(n), gb_estimate(params, n))
        if r is not None:
            ns.append(n)
            ratios.append(r)
    final = ratios[-1]
    slope = _fit_slope(ns, [abs(r - 1.0) for r in ratios])
    passed = abs(final - 1.0) <= tolerance and (slope is None or slope <= -0.8)
    return ValidationReport(params=params, what="totals", n_max=n_max,
                            tolerance=tolerance, ns=tuple(ns), ratios=tuple(ratios),
                            final_ratio=final, error_slope=slope, passed=passed)


def validate_excursions(params: GBParams, n_max: int, tolerance: float,
                        guard: int = 0) -> ValidationReport:
    """Compare excursion counts to the origin against their closed-form leading term.

    Odd-parity lengths must give exactly zero on both sides; they are checked
    and excluded from the ratio sequence.
    """
    if n_max < 50:
        raise ValueError("validation needs n_max >= 50 to clear the transient regime")
    origin = (0, 0)
    kwargs = {"guard": guard} if guard else {}
    table = count_walks(params.model(), (params.i, params.j), n_max,
                        mode="scaled", track=[origin], **kwargs)
    ns, ratios = [], []
    last_even = None
    for n in range(1, n_max + 1):
        count = table.endpoint(origin, n)
        estimate = gb_excursion_estimate(params, n)
        if (n + params.i) % 2 == 1:
            if not (count.is_zero() and estimate.is_zero()):
                raise AssertionError(f"parity violation at n={n}")
            continue
        r = _ratio(count, estimate)
        if r is not None:
            ns.append(n)
            ratios.append(r)
            last_even = r
    slope = _fit_slope(ns, [abs(r - 1.0) for r in ratios])
    passed = (last_even is not None and abs(last_even - 1.0) <= tolerance
              and (slope is None or slope <= -0.8))
    return ValidationReport(params=params, what="excursions", n_max=n_max,
                            tolerance=tolerance, ns=tuple(ns), ratios=tuple(ratios),
                            final_ratio=last_even if last_even is not None else math.nan,
                            error_slope=slope, passed=passed)
