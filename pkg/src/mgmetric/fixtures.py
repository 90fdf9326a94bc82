"""Stock spaces and self-maps, plus JSON-config fixtures for the CLI.

The two stock spaces live on the nonnegative reals: "exp-usual" is the
exponential of the pairwise perimeter of the usual distance, and
"product-exp" is the pairwise product of the multiplicative distance
e^{|x - y|} (the same ternary values, built along the other route).
The two stock maps are piecewise linear with one breakpoint each; both
contract toward 0 below the breakpoint and translate above it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .metric import GMetric, Interval, MultMetric, Point, gm_from_exp, gm_from_product
from .contraction import ContractionParams, SelfMap


def usual_metric(x: Point, y: Point) -> float:
    """Ordinary distance |x - y|."""
    return abs(x - y)


#: Multiplicative metric e^{|x - y|}, held in log-domain.
EXP_ABS_METRIC = MultMetric(dist=usual_metric, description="e^|x-y|")


def quarter_shift_map(x: Point) -> Point:
    """x/4 below 1/3, x - 1/3 from 1/3 up (the breakpoint belongs to the
    translation branch, so the map jumps there)."""
    if x < 1.0 / 3.0:
        return x / 4.0
    return x - 1.0 / 3.0


def half_shift_map(x: Point) -> Point:
    """x/2 on (0, 1/2), x - 1/4 from 1/2 up; 0 stays fixed, matching the
    limit of the halving branch."""
    if x < 0.5:
        return x / 2.0
    return x - 0.25


@dataclass(frozen=True)
class NamedFixture:
    """A registered space, optionally with a self-map and its parameters."""

    id: str
    gmetric: GMetric
    mult: MultMetric | None = None
    map: SelfMap | None = None
    params: ContractionParams | None = None
    metadata: Mapping[str, object] = field(default_factory=dict)


_STOCK_PARAMS = ContractionParams(eta=5.0 / 8.0, gamma=11.0 / 2.0, seed_point=1.0 / 3.0)

_EXP_USUAL = gm_from_exp(usual_metric, description="exp-usual")
_PRODUCT_EXP = gm_from_product(EXP_ABS_METRIC, description="product-exp")

_REGISTRY = (
    NamedFixture(id="exp-usual", gmetric=_EXP_USUAL),
    NamedFixture(id="product-exp", gmetric=_PRODUCT_EXP, mult=EXP_ABS_METRIC),
    NamedFixture(
        id="ex33",
        gmetric=_EXP_USUAL,
        map=SelfMap(apply=quarter_shift_map, description="x/4 below 1/3, x-1/3 above"),
        params=_STOCK_PARAMS,
        metadata={
            "breakpoint": 1.0 / 3.0,
            "continuous_at_breakpoint": False,
            "left_limit": 1.0 / 12.0,
            "value_at_breakpoint": 0.0,
        },
    ),
    NamedFixture(
        id="ex37",
        gmetric=_EXP_USUAL,
        map=SelfMap(apply=half_shift_map, description="x/2 below 1/2, x-1/4 above"),
        params=_STOCK_PARAMS,
        metadata={
            "breakpoint": 0.5,
            "continuous_at_breakpoint": True,
            "left_limit": 0.25,
            "value_at_breakpoint": 0.25,
        },
    ),
)


def registry() -> list[NamedFixture]:
    """All stock fixtures, in a stable order."""
    return list(_REGISTRY)


def get_fixture(fixture_id: str) -> NamedFixture | None:
    for fx in _REGISTRY:
        if fx.id == fixture_id:
            return fx
    return None


# ---------------------------------------------------------------------------
# User-defined fixtures from JSON config


@dataclass(frozen=True)
class PiecewiseRow:
    """One linear piece slope * x + offset on the half-open cell [lo, hi)."""

    lo: float
    hi: float
    slope: float
    offset: float

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"empty piecewise cell: [{self.lo}, {self.hi})")


def _evaluate_rows(rows: tuple[PiecewiseRow, ...], x: float) -> float:
    for row in rows:
        if row.lo <= x < row.hi:
            return row.slope * x + row.offset
    raise ValueError(f"point {x} is outside the piecewise rows")


def piecewise_map(rows: list[PiecewiseRow], description: str = "") -> SelfMap:
    """Self-map from contiguous piecewise-linear rows; each breakpoint
    belongs to the cell on its right."""
    cells = tuple(sorted(rows, key=lambda r: r.lo))
    for a, b in zip(cells, cells[1:]):
        if a.hi != b.lo:
            raise ValueError(f"piecewise cells must be contiguous: {a.hi} != {b.lo}")
    domain = Interval(cells[0].lo, cells[-1].hi)
    return SelfMap(
        apply=lambda x: _evaluate_rows(cells, x),
        description=description or "piecewise linear map",
        domain=domain,
    )


def _parse_endpoint(v, sign: float) -> float:
    return sign * math.inf if v is None else float(v)


def _parse_rows(entries: list) -> list[PiecewiseRow]:
    rows = []
    for entry in entries:
        lo, hi = entry["interval"]
        rows.append(PiecewiseRow(
            lo=_parse_endpoint(lo, -1.0),
            hi=_parse_endpoint(hi, +1.0),
            slope=float(entry["slope"]),
            offset=float(entry["offset"]),
        ))
    return rows


def _parse_space(space) -> tuple[GMetric, MultMetric | None]:
    if space == "exp-usual":
        return _EXP_USUAL, None
    if space == "product-exp":
        return _PRODUCT_EXP, EXP_ABS_METRIC
    if isinstance(space, dict) and space.get("kind") == "product-pl":
        # Log-distance given as a piecewise-linear function of the signed
        # difference x - y; deliberately expressive enough to describe
        # broken (e.g. non-symmetric) metric candidates for auditing.
        cells = tuple(sorted(_parse_rows(space["rows"]), key=lambda r: r.lo))
        for a, b in zip(cells, cells[1:]):
            if a.hi != b.lo:
                raise ValueError(f"piecewise cells must be contiguous: {a.hi} != {b.lo}")
        d = MultMetric(
            dist=lambda x, y: _evaluate_rows(cells, x - y),
            description="piecewise log-distance of x - y",
        )
        return gm_from_product(d), d
    raise ValueError(f"unknown space {space!r}")


def load_fixture_config(source: str | Path | dict) -> NamedFixture:
    """Build a fixture from a JSON config (path or already-parsed dict).

    Schema::

        {
          "id": "custom",                       # optional
          "space": "exp-usual" | "product-exp"
                   | {"kind": "product-pl", "rows": [...]},
          "map":   [{"interval": [lo, hi], "slope": s, "offset": o}, ...],
          "params": {"eta": e, "gamma": g, "x0": x}   # optional with map
        }

    ``map`` rows use half-open cells [lo, hi); null endpoints mean
    unbounded.  Raises ValueError (or json/KeyError) on a bad config.
    """
    if isinstance(source, dict):
        doc = source
    else:
        doc = json.loads(Path(source).read_text())

    gmetric, mult = _parse_space(doc["space"])
    selfmap = None
    if "map" in doc:
        selfmap = piecewise_map(_parse_rows(doc["map"]),
                                description="piecewise linear map (config)")
    params = None
    if "params" in doc:
        p = doc["params"]
        params = ContractionParams(eta=float(p["eta"]), gamma=float(p["gamma"]),
                                   seed_point=float(p["x0"]))
    return NamedFixture(
        id=str(doc.get("id", "config")),
        gmetric=gmetric,
        mult=mult,
        map=selfmap,
        params=params,
    )
