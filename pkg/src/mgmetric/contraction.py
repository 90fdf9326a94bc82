"""Contractive conditions for self-maps of a multiplicative ternary space.

Two pointwise conditions are supported, both evaluated in log-domain:

* "root": the image triple contracts by a factor eta,
  g(Fx, Fy, Fz) <= eta * g(x, y, z);
* "implicit": the image triple is bounded by eta times the largest of
  five reference distances (one of them a min of two terms).

Both come with an m-th-root variant; since t -> t**(1/m) is strictly
increasing, the truth value never depends on m, and the predicates here
evaluate the m = 1 form.  ``certify_region`` sweeps a condition over a
sampled region and returns a deterministic, re-checkable report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Callable

import numpy as np

from .metric import (
    SLACK,
    ClosedBall,
    GMetric,
    Interval,
    LogDistance,
    Point,
    Witness,
    ball_contains,
)


class EmptyRegion(RuntimeError):
    """No sampled point lies in the requested region."""


@dataclass(frozen=True)
class ContractionParams:
    """Parameter bundle certifying a contraction on a ball: factor eta,
    multiplicative ball radius gamma, the seed point, and the root index m."""

    eta: float
    gamma: float
    seed_point: Point
    m: int = 1

    def __post_init__(self) -> None:
        if not (0.0 <= self.eta < 1.0):
            raise ValueError(f"eta must lie in [0, 1), got {self.eta}")
        if not (math.isfinite(self.gamma) and self.gamma > 0.0):
            raise ValueError(f"gamma must be a positive finite real, got {self.gamma}")
        if not (math.isfinite(self.seed_point) and self.seed_point >= 0.0):
            raise ValueError(f"seed point must be a nonnegative finite real, got {self.seed_point}")
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ValueError(f"root index m must be an integer >= 1, got {self.m}")

    @property
    def ball(self) -> ClosedBall:
        return ClosedBall(center=self.seed_point, radius=self.gamma)


@dataclass(frozen=True)
class SelfMap:
    """A self-map of the carrier with an explicit domain interval."""

    apply: Callable[[Point], Point]
    description: str = ""
    domain: Interval = Interval(0.0, math.inf)

    def __call__(self, x: Point) -> Point:
        return self.apply(x)


def _validate_eta_m(eta: float, m: int) -> None:
    if not (0.0 <= eta < 1.0):
        raise ValueError(f"eta must lie in [0, 1), got {eta}")
    if not (isinstance(m, int) and m >= 1):
        raise ValueError(f"root index m must be an integer >= 1, got {m}")


def root_contraction_holds(g: GMetric, F: SelfMap, eta: float,
                           x: Point, y: Point, z: Point, *, m: int = 1) -> bool:
    """Pointwise contraction test g(Fx,Fy,Fz) <= eta * g(x,y,z).

    Independent of ``m``: taking m-th roots rescales both sides by the
    same strictly monotone map.
    """
    _validate_eta_m(eta, m)
    return g(F(x), F(y), F(z)) <= eta * g(x, y, z) + SLACK


def seed_condition_holds(g: GMetric, F: SelfMap, params: ContractionParams) -> bool:
    """Seed admissibility: g(x0, Fx0, Fx0) <= ln((1 - eta) * gamma).

    Returns False (not an error) when (1 - eta) * gamma < 1, where the
    budget is below the metric's floor and nothing can satisfy it.
    """
    x0 = params.seed_point
    budget = (1.0 - params.eta) * params.gamma
    return g(x0, F(x0), F(x0)) <= math.log(budget) + SLACK


def _implicit_max(g: GMetric, F: SelfMap,
                  x: Point, y: Point, z: Point) -> LogDistance:
    fx, fy = F(x), F(y)
    # Order matters only for diagnostics: ties pick the earliest term.
    terms = (
        g(x, y, z),
        g(x, fx, fx),
        g(y, fy, fy),
        g(x, fy, fy),
        min(g(z, fx, fx), g(x, z, z)),
    )
    return max(terms)


def implicit_bound(g: GMetric, F: SelfMap, eta: float,
                   x: Point, y: Point, z: Point, *, m: int = 1) -> LogDistance:
    """Log-domain value of the implicit majorant: eta/m times the max of
    the five reference distances at (x, y, z)."""
    _validate_eta_m(eta, m)
    return eta * _implicit_max(g, F, x, y, z) / m


def implicit_contraction_holds(g: GMetric, F: SelfMap, eta: float,
                               x: Point, y: Point, z: Point, *, m: int = 1) -> bool:
    """Pointwise implicit test g(Fx,Fy,Fz) <= eta * max-term.

    Independent of ``m`` for the same reason as the root condition.
    """
    _validate_eta_m(eta, m)
    return g(F(x), F(y), F(z)) <= eta * _implicit_max(g, F, x, y, z) + SLACK


# ---------------------------------------------------------------------------
# Region certification


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of sweeping a contractive condition over a sampled region.

    ``verdict`` is "holds-on-sample" or "violated"; every violation is a
    re-checkable witness (capped at ``max_witnesses``, full count in
    ``violations``).  The seed condition is checked once per report.
    """

    condition: str
    region: str
    samples: int
    seed: int
    verdict: str
    witnesses: tuple[Witness, ...]
    violations: int
    seed_condition_ok: bool
    eta: float
    gamma: float
    seed_point: float
    m: int

    @property
    def holds(self) -> bool:
        return self.verdict == "holds-on-sample"

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["witnesses"] = [asdict(w) for w in self.witnesses]
        doc["holds"] = self.holds
        return doc


def _stratified(rng: np.random.Generator, lo: float, hi: float, n: int) -> np.ndarray:
    # One draw per stratum, strata visited in a random order per axis.
    u = (rng.permutation(n) + rng.random(n)) / n
    return lo + (hi - lo) * u


def _ball_probe_interval(g: GMetric, ball: ClosedBall, domain: Interval) -> Interval:
    # Expand around the center until both ends are outside the ball or
    # clipped by the map's domain; the ball never extends past that.
    span = 1.0
    for _ in range(200):
        lo = max(domain.lo, ball.center - span)
        hi = min(domain.hi, ball.center + span)
        lo_done = lo == domain.lo or not ball_contains(g, ball, lo)
        hi_done = hi == domain.hi or not ball_contains(g, ball, hi)
        if lo_done and hi_done and math.isfinite(lo) and math.isfinite(hi):
            return Interval(lo, hi)
        span *= 2.0
    raise EmptyRegion(f"could not bound {ball} inside domain {domain}")


def _region_triples(g: GMetric, F: SelfMap, params: ContractionParams,
                    region: Interval | str, n: int,
                    rng: np.random.Generator) -> tuple[list[tuple[float, float, float]], str]:
    if isinstance(region, str):
        if region != "ball":
            raise ValueError(f"region must be an Interval or 'ball', got {region!r}")
        ball = params.ball
        if not ball_contains(g, ball, ball.center):
            raise EmptyRegion(f"{ball} is empty (radius below the metric floor)")
        probe = _ball_probe_interval(g, ball, F.domain)
        candidates = [probe.lo, probe.hi, ball.center, params.seed_point]
        candidates += [float(v) for v in _stratified(rng, probe.lo, probe.hi, 3 * n)]
        pool = [p for p in candidates if ball_contains(g, ball, p)]
        if not pool:
            raise EmptyRegion(f"no sampled point lies in {ball}")
        idx = rng.integers(len(pool), size=(n, 3))
        triples = [(pool[i], pool[j], pool[k]) for i, j, k in idx]
        a, b = pool[0], pool[-1]
        triples = [(a, a, a), (a, a, b), (a, b, b), (b, a, b)] + triples
        return triples, str(ball)

    if not region.finite:
        raise ValueError(f"region interval must be finite, got {region}")
    lo, hi = region.lo, region.hi
    corners = [(lo, lo, lo), (hi, hi, hi), (lo, hi, lo), (hi, lo, hi)]
    if region.contains(params.seed_point):
        s = params.seed_point
        corners += [(s, s, s), (s, lo, hi)]
    a = float(lo + (hi - lo) * rng.random())
    b = float(lo + (hi - lo) * rng.random())
    corners += [(a, a, b), (a, b, b), (a, a, a)]
    xs = _stratified(rng, lo, hi, n)
    ys = _stratified(rng, lo, hi, n)
    zs = _stratified(rng, lo, hi, n)
    triples = corners + [(float(x), float(y), float(z)) for x, y, z in zip(xs, ys, zs)]
    return triples, str(region)


def certify_region(g: GMetric, F: SelfMap, params: ContractionParams,
                   condition: str, region: Interval | str, n: int, seed: int,
                   max_witnesses: int = 32) -> CertificateReport:
    """Evaluate a contractive condition on sampled triples from a region.

    ``region`` is either an explicit interval (sampled as given) or the
    literal string "ball" for the closed ball named by ``params``.
    Sampling is stratified uniform plus forced corner cases (region
    endpoints, the seed point when inside, degenerate triples), and is
    deterministic given ``seed``.  The seed condition is checked once
    and reported alongside.

    Raises EmptyRegion when no sampled point lies in the region.
    """
    if condition not in ("root", "implicit"):
        raise ValueError(f"condition must be 'root' or 'implicit', got {condition!r}")
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")

    rng = np.random.default_rng(seed)
    triples, region_label = _region_triples(g, F, params, region, n, rng)

    # a violated verdict must carry at least one witness
    max_witnesses = max(1, max_witnesses)
    witnesses: list[Witness] = []
    violations = 0
    eta = params.eta
    for x, y, z in triples:
        lhs = g(F(x), F(y), F(z))
        if condition == "root":
            rhs = eta * g(x, y, z)
        else:
            rhs = eta * _implicit_max(g, F, x, y, z)
        if lhs > rhs + SLACK:
            violations += 1
            if violations <= max_witnesses:
                witnesses.append(Witness(condition, (x, y, z), lhs, rhs))

    return CertificateReport(
        condition=condition,
        region=region_label,
        samples=len(triples),
        seed=seed,
        verdict="violated" if violations else "holds-on-sample",
        witnesses=tuple(witnesses),
        violations=violations,
        seed_condition_ok=seed_condition_holds(g, F, params),
        eta=params.eta,
        gamma=params.gamma,
        seed_point=params.seed_point,
        m=params.m,
    )
