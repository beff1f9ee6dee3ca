"""Numeric posterior distribution of party 1's share.

Every supported model maps the payoff pair (d1, d2) to a share that is
nondecreasing in d1 and nonincreasing in d2.  For fixed d1 = x the event
{theta <= t} is therefore {d2 >= y0(x, t)} for a crossing point y0, so the
CDF is a single 1-D quadrature of clipped cross-section lengths over the
payoff rectangle.  The density grid, median, mean, and mode all derive
from that CDF (the mean by direct 2-D quadrature of the share).

This module is the verification channel for the closed forms in
:mod:`nashroyalty.estimators`: it never reuses their formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .bargaining import ModelKind, PayoffBounds, theta_general, theta_model
from .errors import (
    DegenerateDistributionError,
    DegeneratePayoffsError,
    OutOfRangeError,
)

__all__ = [
    "FixedAlphaModel",
    "MonotoneShareFunction",
    "PosteriorCurve",
    "ModeResult",
    "as_posterior_model",
    "support_range",
    "cdf_at",
    "pdf_curve",
    "numeric_median",
    "numeric_mean",
    "numeric_mode",
    "mode_from_curve",
    "overpayment_prob",
]

# Quadrature knobs.  The CDF contract is 1e-8 absolute, but the mode search
# compares density differences of order (quadrature error / grid step), so
# the integrator is pushed well past the contract; the integrands are
# piecewise smooth with breakpoints supplied, making this cheap.
_QUAD_OPTS = {"epsabs": 1e-12, "epsrel": 1e-12, "limit": 300}
_MEAN_OPTS = {"epsabs": 1e-12, "epsrel": 1e-11}
_MEDIAN_TOL = 1e-9
_MODE_TIE_TOL = 1e-9


class _NbsOps:
    """Share and level-crossing geometry for the symmetric model."""

    name = "nbs"

    @staticmethod
    def theta(x: float, y: float) -> float:
        return theta_model(ModelKind.NBS, x, y)

    @staticmethod
    def d2_threshold(x: float, t: float) -> float:
        # theta <= t  <=>  y >= x + 1 - 2 t
        return x + 1.0 - 2.0 * t

    @staticmethod
    def d1_threshold(y: float, t: float) -> float:
        # theta <= t  <=>  x <= y + 2 t - 1
        return y + 2.0 * t - 1.0


class _Case1Ops:
    """Geometry for the outside-option-shifted weight model."""

    name = "case1"

    @staticmethod
    def theta(x: float, y: float) -> float:
        return theta_model(ModelKind.CASE1, x, y)

    @staticmethod
    def d2_threshold(x: float, t: float) -> float:
        # Level sets are circles around (1, 1): theta <= t  <=>
        # (1 - y)^2 <= (1 - x)^2 + 2 t - 1.
        arg = (1.0 - x) ** 2 + 2.0 * t - 1.0
        if arg < 0.0:
            return math.inf
        return 1.0 - math.sqrt(arg)

    @staticmethod
    def d1_threshold(y: float, t: float) -> float:
        arg = (1.0 - y) ** 2 + 1.0 - 2.0 * t
        if arg <= 0.0:
            return math.inf
        return 1.0 - math.sqrt(arg)


class _Case2Ops:
    """Geometry for the proportional weight model (rays from the origin)."""

    name = "case2"

    @staticmethod
    def theta(x: float, y: float) -> float:
        return theta_model(ModelKind.CASE2, x, y)

    @staticmethod
    def d2_threshold(x: float, t: float) -> float:
        if t >= 1.0:
            return -math.inf  # theta <= 1 always
        if t <= 0.0:
            return -math.inf if x == 0.0 else math.inf
        return x * (1.0 - t) / t

    @staticmethod
    def d1_threshold(y: float, t: float) -> float:
        if t >= 1.0:
            return math.inf
        return t * y / (1.0 - t)


@dataclass(frozen=True)
class FixedAlphaModel:
    """Share model with an externally fixed bargaining weight.

    Used when perception scores pin alpha directly instead of deriving it
    from the payoffs; theta = d1 + alpha * (1 - d1 - d2) stays monotone in
    both payoffs for any alpha in [0, 1].
    """

    alpha: float

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        if not (math.isfinite(alpha) and 0.0 <= alpha <= 1.0):
            raise OutOfRangeError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def name(self) -> str:
        return f"fixed-alpha({self.alpha!r})"

    def theta(self, x: float, y: float) -> float:
        return theta_general(x, y, self.alpha)

    def d2_threshold(self, x: float, t: float) -> float:
        if self.alpha == 0.0:
            return -math.inf if x <= t else math.inf
        return 1.0 - (t - (1.0 - self.alpha) * x) / self.alpha

    def d1_threshold(self, y: float, t: float) -> float:
        if self.alpha == 1.0:
            return math.inf if 1.0 - y <= t else -math.inf
        return (t - self.alpha * (1.0 - y)) / (1.0 - self.alpha)


class MonotoneShareFunction:
    """Posterior-engine adapter for an arbitrary monotone share function.

    ``fn(d1, d2)`` must be nondecreasing in d1, nonincreasing in d2, and
    defined on the feasible triangle d1 + d2 <= 1.  Level crossings are
    located by bisection, so any such share rule can reuse the CDF, curve,
    and estimator machinery without supplying analytic inverses.
    """

    def __init__(self, fn, name: str = "custom", tol: float = 1e-12):
        if not (0.0 < tol < 1e-3):
            raise OutOfRangeError(f"tol must lie in (0, 1e-3), got {tol!r}")
        self.fn = fn
        self.name = name
        self.tol = tol

    def theta(self, x: float, y: float) -> float:
        return float(self.fn(x, y))

    def d2_threshold(self, x: float, t: float) -> float:
        top = 1.0 - x  # stay inside the feasible triangle
        if self.theta(x, top) > t:
            return math.inf
        if self.theta(x, 0.0) <= t:
            return -math.inf
        lo, hi = 0.0, top  # fn(x, lo) > t >= fn(x, hi)
        while hi - lo > self.tol:
            mid = 0.5 * (lo + hi)
            if self.theta(x, mid) <= t:
                hi = mid
            else:
                lo = mid
        return hi

    def d1_threshold(self, y: float, t: float) -> float:
        top = 1.0 - y
        if self.theta(0.0, y) > t:
            return -math.inf
        if self.theta(top, y) <= t:
            return math.inf
        lo, hi = 0.0, top  # fn(lo, y) <= t < fn(hi, y)
        while hi - lo > self.tol:
            mid = 0.5 * (lo + hi)
            if self.theta(mid, y) <= t:
                lo = mid
            else:
                hi = mid
        return lo


_BUILTIN_OPS = {
    ModelKind.NBS: _NbsOps(),
    ModelKind.CASE1: _Case1Ops(),
    ModelKind.CASE2: _Case2Ops(),
}


def as_posterior_model(model):
    """Resolve a model argument to an object with share/crossing methods.

    Accepts a :class:`ModelKind` (or its string value), a
    :class:`FixedAlphaModel`, a :class:`MonotoneShareFunction`, or any
    object already exposing ``theta``/``d2_threshold``/``d1_threshold``.
    """
    if isinstance(model, ModelKind):
        return _BUILTIN_OPS[model]
    if isinstance(model, str):
        return _BUILTIN_OPS[ModelKind(model)]
    for attr in ("theta", "d2_threshold", "d1_threshold"):
        if not callable(getattr(model, attr, None)):
            raise OutOfRangeError(
                f"model must be a ModelKind or expose theta/d2_threshold/"
                f"d1_threshold, got {model!r}"
            )
    return model


def support_range(model, bounds: PayoffBounds) -> tuple[float, float]:
    """Smallest and largest share values the payoff rectangle can produce.

    By monotonicity these sit at the corners (a, d) and (b, c).  For the
    proportional model a corner at the origin is replaced by the limit
    along the rectangle's interior; a rectangle equal to the origin has no
    defined share at all and raises :class:`DegeneratePayoffsError`.
    """
    ops = as_posterior_model(model)
    try:
        lo = ops.theta(bounds.a, bounds.d)
    except DegeneratePayoffsError:
        if bounds.b == 0.0:  # the whole rectangle is the origin
            raise
        lo = 1.0  # d2 = 0 surely while d1 > 0 almost surely
    try:
        hi = ops.theta(bounds.b, bounds.c)
    except DegeneratePayoffsError:
        hi = 0.0  # d1 = 0 surely while d2 > 0 almost surely
    return lo, hi


def _require_prob_point(t: float) -> float:
    t = float(t)
    if not (math.isfinite(t) and 0.0 <= t <= 1.0):
        raise OutOfRangeError(f"t must lie in [0, 1], got {t!r}")
    return t


def cdf_at(model, bounds: PayoffBounds, t: float) -> float:
    """P{theta <= t} under independent uniform payoffs on the rectangle.

    Computed by adaptive quadrature of cross-section lengths (absolute
    accuracy well inside 1e-8); degenerate rectangles reduce to 1-D length
    ratios, and a deterministic share yields the step value 0 or 1.
    """
    ops = as_posterior_model(model)
    t = _require_prob_point(t)
    lo, hi = support_range(ops, bounds)
    if lo == hi:  # deterministic share: CDF is a step
        return 1.0 if lo <= t else 0.0
    if t < lo:
        return 0.0
    if t >= hi:
        return 1.0
    a, b, c, d = bounds.a, bounds.b, bounds.c, bounds.d
    if bounds.is_point_mass1:
        y0 = ops.d2_threshold(a, t)
        if y0 == -math.inf:
            return 1.0
        if y0 == math.inf:
            return 0.0
        return min(1.0, max(0.0, (d - y0) / (d - c)))
    if bounds.is_point_mass2:
        x0 = ops.d1_threshold(c, t)
        if x0 == math.inf:
            return 1.0
        if x0 == -math.inf:
            return 0.0
        return min(1.0, max(0.0, (x0 - a) / (b - a)))

    height = d - c

    def cross_len(x: float) -> float:
        y0 = ops.d2_threshold(x, t)
        if y0 == -math.inf:
            return height
        if y0 == math.inf:
            return 0.0
        return min(height, max(0.0, d - y0))

    # Kinks where the crossing curve leaves the rectangle through y = c, d.
    breakpoints = sorted(
        {
            x
            for x in (ops.d1_threshold(c, t), ops.d1_threshold(d, t))
            if math.isfinite(x) and a < x < b
        }
    )
    value, _ = integrate.quad(
        cross_len, a, b, points=breakpoints or None, **_QUAD_OPTS
    )
    return min(1.0, max(0.0, value / bounds.area))


@dataclass(frozen=True, eq=False)
class PosteriorCurve:
    """Share density and CDF tabulated on an even grid spanning [0, 1]."""

    thetas: np.ndarray
    pdf: np.ndarray
    cdf: np.ndarray
    model: object
    bounds: PayoffBounds


def pdf_curve(model, bounds: PayoffBounds, n_points: int = 2001) -> PosteriorCurve:
    """Tabulate the share CDF on an even grid and differentiate it.

    The density uses central differences in the grid interior and one-sided
    differences at the grid ends, so the trapezoid rule over the result
    telescopes back to CDF increments and integrates to 1 up to the
    quadrature accuracy.  Raises :class:`DegenerateDistributionError` when
    the share is deterministic (point-mass rectangle, or a proportional-
    model rectangle pinned to one axis) since no density curve exists.
    """
    ops = as_posterior_model(model)
    n_points = int(n_points)
    if n_points < 3:
        raise OutOfRangeError(f"n_points must be at least 3, got {n_points!r}")
    lo, hi = support_range(ops, bounds)
    if lo == hi:
        raise DegenerateDistributionError(
            f"the share is deterministically {lo!r} on these bounds; "
            "the distribution has no density curve"
        )
    thetas = np.linspace(0.0, 1.0, n_points)
    cdf = np.array([cdf_at(ops, bounds, float(t)) for t in thetas])
    pdf = np.gradient(cdf, thetas)
    np.maximum(pdf, 0.0, out=pdf)  # clip quadrature noise
    return PosteriorCurve(thetas=thetas, pdf=pdf, cdf=cdf, model=ops, bounds=bounds)


def numeric_median(model, bounds: PayoffBounds) -> float:
    """Share value where the CDF crosses 1/2, located by bisection.

    Stops once |CDF - 1/2| <= 1e-9; returns the deterministic share value
    outright when the distribution is a point mass.
    """
    ops = as_posterior_model(model)
    lo, hi = support_range(ops, bounds)
    if lo == hi:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        prob = cdf_at(ops, bounds, mid)
        if abs(prob - 0.5) <= _MEDIAN_TOL:
            return mid
        if prob < 0.5:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4.0 * math.ulp(0.5 * (lo + hi)):
            break
    return 0.5 * (lo + hi)


def numeric_mean(model, bounds: PayoffBounds) -> float:
    """Expected share by adaptive quadrature of the model over the bounds.

    Degenerate sides reduce the integral's dimension; a point-mass
    rectangle returns the share at that point.
    """
    ops = as_posterior_model(model)
    a, b, c, d = bounds.a, bounds.b, bounds.c, bounds.d
    if bounds.is_point_mass1 and bounds.is_point_mass2:
        lo, _ = support_range(ops, bounds)
        return lo
    if bounds.is_point_mass1:
        value, _ = integrate.quad(
            lambda y: ops.theta(a, y), c, d, limit=200, **_MEAN_OPTS
        )
        return min(1.0, max(0.0, value / (d - c)))
    if bounds.is_point_mass2:
        value, _ = integrate.quad(
            lambda x: ops.theta(x, c), a, b, limit=200, **_MEAN_OPTS
        )
        return min(1.0, max(0.0, value / (b - a)))
    value, _ = integrate.dblquad(
        lambda y, x: ops.theta(x, y), a, b, c, d, **_MEAN_OPTS
    )
    return min(1.0, max(0.0, value / bounds.area))


@dataclass(frozen=True)
class ModeResult:
    """Grid argmax of the share density.

    ``plateau`` records whether the maximum was attained on more than one
    grid point (a flat top rather than a single peak).
    """

    value: float
    plateau: bool

    def __float__(self) -> float:
        return self.value


def numeric_mode(model, bounds: PayoffBounds, n_points: int = 2001) -> ModeResult:
    """Locate the share density's maximum on a grid of ``n_points``.

    Ties within 1e-9 of the grid maximum form the argmax set.  The share
    value at the upper payoff corner (b, d) is returned exactly whenever
    its one-sided density (CDF slope into the support) ties the maximum,
    since the true peak of these models sits at that corner image;
    otherwise the largest tied grid point is returned.
    """
    return mode_from_curve(pdf_curve(model, bounds, n_points))


def mode_from_curve(curve: PosteriorCurve) -> ModeResult:
    """The density argmax of an already-tabulated posterior curve.

    Same tie and corner conventions as :func:`numeric_mode`.
    """
    ops = as_posterior_model(curve.model)
    bounds = curve.bounds
    peak = float(curve.pdf.max())
    tied = np.flatnonzero(curve.pdf >= peak - _MODE_TIE_TOL)
    plateau = tied.size > 1
    step = curve.thetas[1] - curve.thetas[0]
    corner = ops.theta(bounds.b, bounds.d)
    corner_cdf = cdf_at(ops, bounds, corner)
    one_sided = []
    if corner + step <= 1.0:
        one_sided.append((cdf_at(ops, bounds, corner + step) - corner_cdf) / step)
    if corner - step >= 0.0:
        one_sided.append((corner_cdf - cdf_at(ops, bounds, corner - step)) / step)
    if one_sided and max(one_sided) >= peak - _MODE_TIE_TOL:
        return ModeResult(value=corner, plateau=plateau)
    return ModeResult(value=float(curve.thetas[tied[-1]]), plateau=plateau)


def overpayment_prob(model, bounds: PayoffBounds, theta_hat: float) -> float:
    """Probability the realized share is at or below the point estimate.

    This is the chance that paying party 1 the estimated share
    overcompensates it: P{theta <= theta_hat} = ``cdf_at`` at the estimate.
    """
    return cdf_at(model, bounds, theta_hat)
