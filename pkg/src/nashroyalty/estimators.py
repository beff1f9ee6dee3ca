"""Closed-form point estimates of party 1's share under payoff uncertainty.

With d1 ~ U[a, b] and d2 ~ U[c, d] independent, the share theta1 is a
random variable and the best point estimate depends on the negotiator's
attitude to estimation error:

* ``MAP`` - minimize the probability of any error: the posterior mode,
  which for these monotone models sits at the upper payoff corner (b, d).
* ``ABS`` - minimize expected absolute error: the posterior median.
* ``MSE`` - minimize expected squared error: the posterior mean.

Every estimate below is a closed form.  All are exact except the ABS
estimate for the ``CASE1`` model, where the median has no elementary form
and the model value at the interval midpoints is used instead (within a
few percent of the true median; see :mod:`nashroyalty.posterior` for the
numeric median).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .bargaining import ModelKind, PayoffBounds, theta_model
from .errors import DegeneratePayoffsError, OutOfRangeError

__all__ = [
    "RiskProfile",
    "EstimateResult",
    "NOTE_EXACT",
    "NOTE_APPROXIMATION",
    "NOTE_NUMERIC",
    "map_estimate",
    "abs_estimate",
    "mse_estimate",
    "estimate",
]

NOTE_EXACT = "exact closed form"
NOTE_APPROXIMATION = "closed-form approximation"
NOTE_NUMERIC = "numeric"


class RiskProfile(enum.Enum):
    """Which estimation-error cost the point estimate minimizes."""

    MAP = "map"
    ABS = "abs"
    MSE = "mse"


@dataclass(frozen=True)
class EstimateResult:
    """A point estimate of both parties' shares.

    ``theta2`` is always exactly ``1 - theta1``.  ``royalty_rate`` and
    ``overpayment_prob`` are filled in by callers that know the financials
    or the posterior distribution; ``method_note`` records whether the
    value is an exact closed form, a closed-form approximation, or a
    numeric result.
    """

    theta1: float
    theta2: float
    method_note: str
    royalty_rate: float | None = None
    overpayment_prob: float | None = None


def _result(theta1: float, note: str) -> EstimateResult:
    theta1 = min(1.0, max(0.0, float(theta1)))
    return EstimateResult(theta1=theta1, theta2=1.0 - theta1, method_note=note)


def _nbs_mean(bounds: PayoffBounds) -> float:
    # Mean and median coincide for the linear symmetric model; shared so
    # the ABS and MSE estimates are bit-identical.
    return (bounds.a + bounds.b - bounds.c - bounds.d) / 4.0 + 0.5


def _case2_mean(bounds: PayoffBounds) -> float:
    """E[d1 / (d1 + d2)] for independent uniform payoffs.

    Closed form from integrating x/(x+y) over the rectangle; the point-mass
    cases are the limits of the rectangle formula as a side collapses.
    """
    if bounds.is_point_mass1 and bounds.is_point_mass2:
        return theta_model(ModelKind.CASE2, bounds.a, bounds.c)
    return _case2_mean_raw(bounds.a, bounds.b, bounds.c, bounds.d)


def _case2_mean_raw(a: float, b: float, c: float, d: float) -> float:
    if a == b and c == d:
        return a / (a + c)  # callers exclude the origin
    if a == b:
        if a == 0.0:
            return 0.0  # d1 = 0 and d2 > 0 almost surely
        ratio = (d - c) / (a + c)
        if math.isfinite(ratio):
            spread = math.log1p(ratio)
        else:
            spread = math.log(a + d) - math.log(a + c)
        return a * spread / (d - c)
    if c == d:
        if d == 0.0:
            return 1.0  # d2 = 0 and d1 > 0 almost surely
        ratio = (b - a) / (a + d)
        if math.isfinite(ratio):
            spread = math.log1p(ratio)
        else:
            spread = math.log(b + d) - math.log(a + d)
        return 1.0 - d * spread / (b - a)

    def xlog(coefficient: float, argument: float) -> float:
        # x * log(x) -> 0 convention; the argument is 0 only when the
        # coefficient is exactly 0 (at a = c = 0).
        if coefficient == 0.0:
            return 0.0
        return coefficient * math.log(argument)

    denominator = 2.0 * (d - c) * (b - a)
    if denominator != 0.0:
        numerator = (
            xlog(a * a - c * c, a + c)
            + xlog(d * d - a * a, a + d)
            + xlog(c * c - b * b, b + c)
            + xlog(b * b - d * d, b + d)
            + (c - d) * (a - b)
        )
        value = numerator / denominator
        if math.isfinite(value):
            return value
    # The rectangle's area underflowed (or cancellation noise was amplified
    # past overflow).  The share is scale invariant, so renormalize to put
    # the largest bound at 1; if that is not enough, the remaining width is
    # below any representable area and the narrower side acts as a point
    # mass at its midpoint.
    scale = max(b, d)
    if scale != 1.0:
        return _case2_mean_raw(a / scale, b / scale, c / scale, d / scale)
    if (b - a) / b <= (d - c) / d:
        mid = (a + b) / 2.0
        return _case2_mean_raw(mid, mid, c, d)
    mid = (c + d) / 2.0
    return _case2_mean_raw(a, b, mid, mid)


def map_estimate(model: ModelKind, bounds: PayoffBounds) -> EstimateResult:
    """Most-probable share: the model value at the upper corner (b, d).

    The share density is maximal where both payoffs are largest, so the
    mode is ``theta_model(model, b, d)``.  Raises
    :class:`DegeneratePayoffsError` for ``CASE2`` when b = d = 0.
    """
    model = ModelKind(model)
    return _result(theta_model(model, bounds.b, bounds.d), NOTE_EXACT)


def abs_estimate(model: ModelKind, bounds: PayoffBounds) -> EstimateResult:
    """Median share: the model value at the interval midpoints.

    Exact for ``NBS`` (the share is a symmetric sum) and ``CASE2`` (the
    sub-level sets split the rectangle's symmetry group evenly); a
    closed-form approximation for ``CASE1``.
    """
    model = ModelKind(model)
    if model is ModelKind.NBS:
        return _result(_nbs_mean(bounds), NOTE_EXACT)
    mid1 = (bounds.a + bounds.b) / 2.0
    mid2 = (bounds.c + bounds.d) / 2.0
    if model is ModelKind.CASE2:
        return _result(theta_model(model, mid1, mid2), NOTE_EXACT)
    return _result(theta_model(model, mid1, mid2), NOTE_APPROXIMATION)


def mse_estimate(model: ModelKind, bounds: PayoffBounds) -> EstimateResult:
    """Mean share: the exact expectation of the model over the rectangle."""
    model = ModelKind(model)
    a, b, c, d = bounds.a, bounds.b, bounds.c, bounds.d
    if model is ModelKind.NBS:
        return _result(_nbs_mean(bounds), NOTE_EXACT)
    if model is ModelKind.CASE1:
        quadratic = (c * c + c * d + d * d - a * a - a * b - b * b) / 6.0
        linear = (a + b - c - d + 1.0) / 2.0
        return _result(quadratic + linear, NOTE_EXACT)
    if b == 0.0 and d == 0.0:
        raise DegeneratePayoffsError(
            "the proportional-weight share is undefined when both payoffs "
            "are identically 0 (a = b = 0 and c = d = 0)"
        )
    return _result(_case2_mean(bounds), NOTE_EXACT)


_DISPATCH = {
    RiskProfile.MAP: map_estimate,
    RiskProfile.ABS: abs_estimate,
    RiskProfile.MSE: mse_estimate,
}


def estimate(
    model: ModelKind, risk: RiskProfile, bounds: PayoffBounds
) -> EstimateResult:
    """Dispatch to the estimator matching the given risk profile."""
    try:
        handler = _DISPATCH[RiskProfile(risk)]
    except ValueError:
        raise OutOfRangeError(f"unknown risk profile {risk!r}") from None
    return handler(model, bounds)
