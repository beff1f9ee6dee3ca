"""Core bargaining models for splitting licensing profit.

Party 1 licenses intellectual property to party 2; together they realize a
divisible operating income.  Each party holds a disagreement payoff, the
profit it keeps if negotiation fails, and the generalized Nash solution
awards party 1 the share

    theta1 = d1 + alpha * (1 - d1 - d2)

of operating income, where d1 and d2 are the disagreement payoffs as
fractions of operating income and alpha is party 1's bargaining weight.
Three weight rules are supported:

* ``NBS``   - the symmetric solution, alpha = 1/2.
* ``CASE1`` - alpha = 1/2 + (d1 - d2) / 2: outside options shift weight.
* ``CASE2`` - alpha = d1 / (d1 + d2): weight proportional to payoff size.

All quantities here are dimensionless fractions of operating income;
:func:`royalty_rate` converts a share into a royalty rate on revenue.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import (
    DegeneratePayoffsError,
    DisorderedBoundsError,
    OutOfRangeError,
    SurplusViolationError,
)

__all__ = [
    "ModelKind",
    "FinancialStatement",
    "NormalizedPayoffs",
    "PerceptionMatrix",
    "PayoffBounds",
    "ProfitPartition",
    "validate_bounds",
    "alpha_from_perceptions",
    "alpha_case1",
    "alpha_case2",
    "theta_general",
    "theta_model",
    "optimal_partition",
    "royalty_rate",
    "party2_share",
]

# Slack for d1 + d2 <= 1: points sampled on the edge of a valid payoff
# rectangle (b + d = 1) can overshoot the simplex by a few ulps.
_SUM_SLACK = 1e-12


class ModelKind(enum.Enum):
    """Which bargaining-weight rule maps payoffs to party 1's share."""

    NBS = "nbs"
    CASE1 = "case1"
    CASE2 = "case2"


def _as_float(name: str, value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise OutOfRangeError(f"{name} must be a number, got {value!r}") from None


def _require_unit(name: str, value) -> float:
    value = _as_float(name, value)
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise OutOfRangeError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def _clip01(value: float) -> float:
    # Guards roundoff only; all model formulas map valid inputs into [0, 1].
    return min(1.0, max(0.0, value))


@dataclass(frozen=True)
class FinancialStatement:
    """Licensee operating revenue and cost, in common currency units."""

    operating_revenue: float
    operating_cost: float

    def __post_init__(self) -> None:
        for name in ("operating_revenue", "operating_cost"):
            value = _as_float(name, getattr(self, name))
            if not (math.isfinite(value) and value >= 0.0):
                raise OutOfRangeError(
                    f"{name} must be a finite nonnegative number, got {value!r}"
                )
            object.__setattr__(self, name, value)
        if self.operating_revenue <= self.operating_cost:
            raise OutOfRangeError(
                "operating income must be positive: operating_revenue "
                f"({self.operating_revenue!r}) must exceed operating_cost "
                f"({self.operating_cost!r})"
            )

    @property
    def operating_income(self) -> float:
        return self.operating_revenue - self.operating_cost

    @property
    def operating_margin(self) -> float:
        """Operating income as a fraction of revenue."""
        return self.operating_income / self.operating_revenue


@dataclass(frozen=True)
class NormalizedPayoffs:
    """Disagreement payoffs as fractions of operating income."""

    d1: float
    d2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "d1", _require_unit("d1", self.d1))
        object.__setattr__(self, "d2", _require_unit("d2", self.d2))
        if self.d1 + self.d2 > 1.0 + _SUM_SLACK:
            raise SurplusViolationError(
                f"d1 + d2 must not exceed 1, got {self.d1!r} + {self.d2!r} "
                f"= {self.d1 + self.d2!r}"
            )


@dataclass(frozen=True)
class PerceptionMatrix:
    """Pairwise bargaining-power perceptions, each scored in [0, 1].

    ``pij`` is how strong party j's position looks from party i's side;
    row 1 holds party 1's perceptions and row 2 party 2's.
    """

    p11: float
    p12: float
    p21: float
    p22: float

    def __post_init__(self) -> None:
        for name in ("p11", "p12", "p21", "p22"):
            object.__setattr__(self, name, _require_unit(name, getattr(self, name)))


@dataclass(frozen=True)
class PayoffBounds:
    """Interval bounds for both parties' uncertain disagreement payoffs.

    d1 is uniform on [a, b], d2 is uniform on [c, d], independently;
    b + d <= 1 keeps every realization inside the feasible simplex.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _require_unit(name, getattr(self, name)))
        if self.a > self.b:
            raise DisorderedBoundsError(
                f"bounds must satisfy a <= b, got a = {self.a!r} > b = {self.b!r}"
            )
        if self.c > self.d:
            raise DisorderedBoundsError(
                f"bounds must satisfy c <= d, got c = {self.c!r} > d = {self.d!r}"
            )
        if self.b + self.d > 1.0:
            raise SurplusViolationError(
                f"bounds must satisfy b + d <= 1, got b = {self.b!r}, "
                f"d = {self.d!r}, b + d = {self.b + self.d!r}"
            )

    @property
    def width1(self) -> float:
        return self.b - self.a

    @property
    def width2(self) -> float:
        return self.d - self.c

    @property
    def area(self) -> float:
        return self.width1 * self.width2

    @property
    def is_point_mass1(self) -> bool:
        return self.a == self.b

    @property
    def is_point_mass2(self) -> bool:
        return self.c == self.d

    def swapped(self) -> "PayoffBounds":
        """The same negotiation with the parties' roles exchanged."""
        return PayoffBounds(self.c, self.d, self.a, self.b)


@dataclass(frozen=True)
class ProfitPartition:
    """Absolute profit awarded to each party; sums to operating income."""

    pi1: float
    pi2: float


def validate_bounds(a: float, b: float, c: float, d: float) -> PayoffBounds:
    """Check payoff bounds and return them as a :class:`PayoffBounds`.

    Raises :class:`OutOfRangeError`, :class:`DisorderedBoundsError`, or
    :class:`SurplusViolationError` naming the violated constraint.
    """
    return PayoffBounds(a, b, c, d)


def alpha_from_perceptions(perceptions: PerceptionMatrix) -> float:
    """Bargaining weight implied by the four perception scores.

    Averages party 1's perceived strengths against party 2's around the
    symmetric baseline 1/2; returns exactly 0.5 when the rows balance.
    """
    p = perceptions
    gap = (p.p11 + p.p12) - (p.p21 + p.p22)
    return _clip01(0.5 + gap / 4.0)


def alpha_case1(d1: float, d2: float) -> float:
    """Weight shifted by the outside-option gap: 1/2 + (d1 - d2) / 2."""
    payoffs = NormalizedPayoffs(d1, d2)
    return _clip01(0.5 + (payoffs.d1 - payoffs.d2) / 2.0)


def alpha_case2(d1: float, d2: float) -> float:
    """Weight proportional to payoff size: d1 / (d1 + d2).

    Raises :class:`DegeneratePayoffsError` at d1 = d2 = 0 where the ratio
    is 0/0.
    """
    payoffs = NormalizedPayoffs(d1, d2)
    total = payoffs.d1 + payoffs.d2
    if total == 0.0:
        raise DegeneratePayoffsError(
            "the proportional bargaining weight d1 / (d1 + d2) is undefined "
            "at d1 = d2 = 0"
        )
    return _clip01(payoffs.d1 / total)


def theta_general(d1: float, d2: float, alpha: float) -> float:
    """Party 1's share of operating income under bargaining weight alpha.

    theta1 = d1 + alpha * (1 - d1 - d2); always between d1 and 1 - d2, so
    both parties do at least as well as their disagreement payoffs.
    """
    payoffs = NormalizedPayoffs(d1, d2)
    alpha = _require_unit("alpha", alpha)
    surplus = 1.0 - payoffs.d1 - payoffs.d2
    return _clip01(payoffs.d1 + alpha * surplus)


def theta_model(model: ModelKind, d1: float, d2: float) -> float:
    """Party 1's share under one of the three built-in weight rules.

    Evaluates each model's reduced closed form; agrees with
    ``theta_general(d1, d2, alpha_<model>(d1, d2))`` to roundoff.
    """
    model = ModelKind(model)
    payoffs = NormalizedPayoffs(d1, d2)
    x, y = payoffs.d1, payoffs.d2
    if model is ModelKind.NBS:
        return _clip01(0.5 + (x - y) / 2.0)
    if model is ModelKind.CASE1:
        return _clip01((y * y - x * x + 2.0 * (x - y) + 1.0) / 2.0)
    total = x + y
    if total == 0.0:
        raise DegeneratePayoffsError(
            "the proportional-weight share d1 / (d1 + d2) is undefined "
            "at d1 = d2 = 0"
        )
    return _clip01(x / total)


def optimal_partition(
    operating_income: float, d1_abs: float, d2_abs: float, alpha: float
) -> ProfitPartition:
    """Split absolute operating income given absolute disagreement payoffs.

    Each party receives its disagreement payoff plus its weighted share of
    the remaining surplus; pi1 + pi2 equals operating income exactly.
    """
    operating_income = _as_float("operating_income", operating_income)
    if not (math.isfinite(operating_income) and operating_income > 0.0):
        raise OutOfRangeError(
            f"operating_income must be positive, got {operating_income!r}"
        )
    d1_abs = _as_float("d1_abs", d1_abs)
    d2_abs = _as_float("d2_abs", d2_abs)
    for name, value in (("d1_abs", d1_abs), ("d2_abs", d2_abs)):
        if not (math.isfinite(value) and value >= 0.0):
            raise OutOfRangeError(
                f"{name} must be a finite nonnegative number, got {value!r}"
            )
    if d1_abs + d2_abs > operating_income * (1.0 + _SUM_SLACK):
        raise SurplusViolationError(
            "disagreement payoffs must not exceed operating income: "
            f"d1_abs + d2_abs = {d1_abs + d2_abs!r} > {operating_income!r}"
        )
    alpha = _require_unit("alpha", alpha)
    surplus = operating_income - d1_abs - d2_abs
    return ProfitPartition(
        pi1=d1_abs + alpha * surplus,
        pi2=d2_abs + (1.0 - alpha) * surplus,
    )


def royalty_rate(theta1: float, financials: FinancialStatement) -> float:
    """Royalty rate on revenue equivalent to share theta1 of income.

    r = theta1 * operating margin, so r * revenue = theta1 * income.
    """
    theta1 = _require_unit("theta1", theta1)
    return theta1 * financials.operating_margin


def party2_share(theta1: float) -> float:
    """Party 2's share of operating income, 1 - theta1."""
    theta1 = _require_unit("theta1", theta1)
    return 1.0 - theta1
