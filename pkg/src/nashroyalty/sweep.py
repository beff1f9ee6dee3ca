"""Families of share estimates swept over the payoff-bound grid.

Reproduces the sensitivity tables behind the model figures: party 1's
bound interval [a, b] is held fixed while party 2's upper bound d sweeps a
grid for each lower bound c in a list.  Estimates come either from the
closed forms or from the numeric posterior engine, and tables serialize to
CSV and JSON for plotting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .bargaining import ModelKind, theta_model, validate_bounds
from .errors import (
    BoundsValidationError,
    DegeneratePayoffsError,
    OutOfRangeError,
)
from .estimators import RiskProfile, estimate
from .posterior import numeric_mean, numeric_median, numeric_mode

__all__ = [
    "SweepRow",
    "SweepSeries",
    "MapReferencePoint",
    "OmittedCell",
    "SweepTable",
    "family_sweep",
    "write_csv",
    "write_map_csv",
    "to_json_dict",
    "write_json",
]

_ENGINES = ("closed_form", "numeric")


@dataclass(frozen=True)
class SweepRow:
    d: float
    theta_hat: float


@dataclass(frozen=True)
class SweepSeries:
    c: float
    rows: tuple[SweepRow, ...]


@dataclass(frozen=True)
class MapReferencePoint:
    d: float
    theta_map: float


@dataclass(frozen=True)
class OmittedCell:
    c: float
    d: float
    reason: str


@dataclass(frozen=True)
class SweepTable:
    """One estimator family over a (c, d) grid, plus the MAP reference line."""

    model: ModelKind
    risk: RiskProfile
    a: float
    b: float
    series: tuple[SweepSeries, ...]
    map_reference: tuple[MapReferencePoint, ...]
    omitted: tuple[OmittedCell, ...]


def _default_d_grid(b: float) -> tuple[float, ...]:
    top = 1.0 - b
    return tuple(
        round(k * 0.01, 10) for k in range(81) if round(k * 0.01, 10) <= top
    )


def _default_c_values(b: float) -> tuple[float, ...]:
    top = 1.0 - b
    return tuple(
        round(k * 0.1, 10) for k in range(8) if round(k * 0.1, 10) <= top
    )


def _numeric_value(model, risk: RiskProfile, bounds) -> float:
    if risk is RiskProfile.MAP:
        return numeric_mode(model, bounds).value
    if risk is RiskProfile.ABS:
        return numeric_median(model, bounds)
    return numeric_mean(model, bounds)


def family_sweep(
    model: ModelKind,
    risk: RiskProfile,
    a: float,
    b: float,
    c_values=None,
    d_grid=None,
    engine: str = "closed_form",
) -> SweepTable:
    """Tabulate the chosen estimate over the (c, d) grid.

    Cells with d < c are skipped (no such interval exists).  A cell on
    which the model itself is undefined is omitted from its series and
    recorded in ``omitted`` with the reason.  Bound-validation failures
    are propagated with the offending cell identified.
    """
    model = ModelKind(model)
    risk = RiskProfile(risk)
    if engine not in _ENGINES:
        raise OutOfRangeError(f"engine must be one of {_ENGINES}, got {engine!r}")
    validate_bounds(a, b, 0.0, 0.0)
    if c_values is None:
        c_values = _default_c_values(b)
    if d_grid is None:
        d_grid = _default_d_grid(b)
    c_values = tuple(float(c) for c in c_values)
    d_grid = tuple(float(d) for d in d_grid)

    series = []
    omitted = []
    for c in c_values:
        rows = []
        for d in d_grid:
            if d < c:
                continue
            try:
                bounds = validate_bounds(a, b, c, d)
            except BoundsValidationError as exc:
                raise type(exc)(f"sweep cell (c={c!r}, d={d!r}): {exc}") from exc
            try:
                if engine == "closed_form":
                    value = estimate(model, risk, bounds).theta1
                else:
                    value = _numeric_value(model, risk, bounds)
            except DegeneratePayoffsError as exc:
                omitted.append(OmittedCell(c=c, d=d, reason=str(exc)))
                continue
            rows.append(SweepRow(d=d, theta_hat=value))
        series.append(SweepSeries(c=c, rows=tuple(rows)))

    map_reference = []
    for d in d_grid:
        try:
            bounds = validate_bounds(a, b, 0.0, d)
        except BoundsValidationError as exc:
            raise type(exc)(f"map reference point d={d!r}: {exc}") from exc
        try:
            map_reference.append(
                MapReferencePoint(d=d, theta_map=theta_model(model, b, d))
            )
        except DegeneratePayoffsError:
            continue  # undefined reference point (proportional model, b = d = 0)

    return SweepTable(
        model=model,
        risk=risk,
        a=float(a),
        b=float(b),
        series=tuple(series),
        map_reference=tuple(map_reference),
        omitted=tuple(omitted),
    )


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_csv(table: SweepTable, path) -> None:
    """Write the sweep rows as CSV: one line per kept (c, d) cell."""
    lines = ["model,risk,a,b,c,d,theta_hat"]
    for block in table.series:
        for row in block.rows:
            lines.append(
                ",".join(
                    (
                        table.model.value,
                        table.risk.value,
                        _fmt(table.a),
                        _fmt(table.b),
                        _fmt(block.c),
                        _fmt(row.d),
                        _fmt(row.theta_hat),
                    )
                )
            )
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


def write_map_csv(table: SweepTable, path) -> None:
    """Write the MAP reference line as CSV with columns d,theta_map."""
    lines = ["d,theta_map"]
    for point in table.map_reference:
        lines.append(",".join((_fmt(point.d), _fmt(point.theta_map))))
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


def to_json_dict(table: SweepTable) -> dict:
    """Mirror the table structure as JSON-ready primitives."""
    return {
        "model": table.model.value,
        "risk": table.risk.value,
        "a": table.a,
        "b": table.b,
        "series": [
            {
                "c": block.c,
                "rows": [{"d": row.d, "theta_hat": row.theta_hat} for row in block.rows],
            }
            for block in table.series
        ],
        "map_reference": [
            {"d": point.d, "theta_map": point.theta_map}
            for point in table.map_reference
        ],
        "omitted": [
            {"c": cell.c, "d": cell.d, "reason": cell.reason}
            for cell in table.omitted
        ],
    }


def write_json(table: SweepTable, path) -> None:
    """Write the JSON mirror (two-space indent, LF endings, UTF-8)."""
    text = json.dumps(to_json_dict(table), indent=2) + "\n"
    Path(path).write_bytes(text.encode("utf-8"))
