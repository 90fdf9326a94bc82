"""Multiplicative distance functions on the nonnegative reals.

A multiplicative metric takes values >= 1 and multiplies along paths
instead of adding, so everything here is stored and evaluated in
log-domain: a binary metric maps a pair to ln(d) >= 0, a ternary one
maps a triple to ln(G) >= 0, and coincidence (distance exactly 1)
becomes log value 0.  Exponentiation happens only at API boundaries
(``GMetric.value``, reports, the CLI).

Axiom checking is sampling-based: deterministic pseudo-random points
given a seed, plus a fixed set of corner cases.  Failures are recorded
as re-checkable witnesses, never raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Callable

import numpy as np

# Absolute slack for inequality checks in log-domain.  Must sit far
# below any quantity of interest (the smallest fixture scale is ~1/3).
SLACK = 1e-12

# Sampled "distinct" points must be separated by at least this much,
# so strict-positivity checks cannot trip over float coincidences.
_MIN_SEPARATION = 1e-9

Point = float
LogDistance = float


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] of carrier points; hi may be +inf."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class MultMetric:
    """Binary multiplicative metric candidate, evaluated in log-domain.

    ``dist(x, y)`` returns ln of the multiplicative distance; for a
    valid metric that is >= 0, zero exactly on the diagonal, symmetric,
    and subadditive (the multiplicative triangle inequality).
    """

    dist: Callable[[Point, Point], LogDistance]
    description: str = ""

    def __call__(self, x: Point, y: Point) -> LogDistance:
        return self.dist(x, y)

    def value(self, x: Point, y: Point) -> float:
        """Multiplicative (exponentiated) distance."""
        return math.exp(self.dist(x, y))


@dataclass(frozen=True)
class GMetric:
    """Ternary multiplicative metric candidate, evaluated in log-domain."""

    g: Callable[[Point, Point, Point], LogDistance]
    description: str = ""

    def __call__(self, x: Point, y: Point, z: Point) -> LogDistance:
        return self.g(x, y, z)

    def value(self, x: Point, y: Point, z: Point) -> float:
        """Multiplicative (exponentiated) distance of the triple."""
        return math.exp(self.g(x, y, z))


@dataclass(frozen=True)
class ClosedBall:
    """Closed ball {rho : G(center, rho, rho) <= radius}.

    The radius is a multiplicative scale (gamma > 0).  Because
    G(center, center, center) = 1, the ball is nonempty iff gamma >= 1;
    gamma < 1 gives the empty ball, which is legal everywhere.
    """

    center: Point
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.center) and self.center >= 0.0):
            raise ValueError(f"ball center must be a nonnegative finite real, got {self.center}")
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"ball radius must be a positive finite real, got {self.radius}")

    @property
    def log_radius(self) -> float:
        return math.log(self.radius)

    def __str__(self) -> str:
        return f"ball(center={self.center}, radius={self.radius})"


def ball_contains(g: GMetric, ball: ClosedBall, rho: Point) -> bool:
    """Membership test for the closed ball, in log-domain."""
    return g(ball.center, rho, rho) <= ball.log_radius


# ---------------------------------------------------------------------------
# Constructions


def _canonical_pair_sum(pairfn: Callable[[float, float], float],
                        x: float, y: float, z: float) -> float:
    # Evaluate each unordered pair in canonical argument order and add
    # the three terms smallest-first, so every permutation of (x, y, z)
    # produces the bitwise-identical float.
    a = pairfn(x, y) if x <= y else pairfn(y, x)
    b = pairfn(y, z) if y <= z else pairfn(z, y)
    c = pairfn(z, x) if z <= x else pairfn(x, z)
    t0, t1, t2 = sorted((a, b, c))
    return t0 + t1 + t2


def gm_from_product(d: MultMetric, description: str = "") -> GMetric:
    """Ternary metric from a multiplicative metric: the product of the
    three pairwise distances (a sum in log-domain)."""
    def g(x: Point, y: Point, z: Point) -> LogDistance:
        return _canonical_pair_sum(d.dist, x, y, z)

    label = description or (f"pairwise product of {d.description}" if d.description
                            else "pairwise product metric")
    return GMetric(g=g, description=label)


def gm_from_exp(d: Callable[[Point, Point], float], description: str = "") -> GMetric:
    """Ternary metric from an ordinary metric: exp of the perimeter
    d(x,y) + d(y,z) + d(z,x).  Stored in log-domain, so the returned
    callable is just the perimeter itself."""
    def g(x: Point, y: Point, z: Point) -> LogDistance:
        return _canonical_pair_sum(d, x, y, z)

    return GMetric(g=g, description=description or "exp of pairwise perimeter")


# ---------------------------------------------------------------------------
# Axiom reports


@dataclass(frozen=True)
class Witness:
    """One violated check: the points involved and both sides of the
    required relation, in log-domain.

    ``relation`` is the relation that was *required* to hold between
    lhs_log and rhs_log: one of "<=", ">=", ">" or "==" (within slack).
    """

    rule: str
    points: tuple[float, ...]
    lhs_log: float
    rhs_log: float
    relation: str = "<="

    def holds(self, slack: float = SLACK) -> bool:
        """Re-evaluate the required relation from the stored sides."""
        if self.relation == "<=":
            return self.lhs_log <= self.rhs_log + slack
        if self.relation == ">=":
            return self.lhs_log >= self.rhs_log - slack
        if self.relation == ">":
            return self.lhs_log > self.rhs_log + slack
        if self.relation == "==":
            return abs(self.lhs_log - self.rhs_log) <= slack
        raise ValueError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of a sampled axiom suite.

    ``axioms`` maps each rule name to "pass" or "fail"; every failing
    rule carries at least one witness (capped at ``max_witnesses`` per
    rule, with full counts in ``violations``).
    """

    subject: str
    domain: str
    axioms: dict[str, str]
    witnesses: tuple[Witness, ...]
    violations: dict[str, int]
    samples: int
    seed: int

    @property
    def passed(self) -> bool:
        return all(status == "pass" for status in self.axioms.values())

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["witnesses"] = [asdict(w) for w in self.witnesses]
        doc["passed"] = self.passed
        return doc


class _Recorder:
    """Collects violations while a suite runs; order is evaluation order."""

    def __init__(self, rules: tuple[str, ...], max_witnesses: int):
        self.rules = rules
        # a failing rule must keep at least one witness
        self.max_witnesses = max(1, max_witnesses)
        self.counts: dict[str, int] = {rule: 0 for rule in rules}
        self.witnesses: list[Witness] = []

    def require(self, rule: str, points: tuple[float, ...],
                lhs: float, rhs: float, relation: str = "<=") -> None:
        w = Witness(rule, points, lhs, rhs, relation)
        if not w.holds():
            self.counts[rule] += 1
            if self.counts[rule] <= self.max_witnesses:
                self.witnesses.append(w)

    def report(self, subject: str, domain: Interval, samples: int, seed: int) -> AxiomReport:
        statuses = {rule: ("fail" if self.counts[rule] else "pass") for rule in self.rules}
        return AxiomReport(
            subject=subject,
            domain=str(domain),
            axioms=statuses,
            witnesses=tuple(self.witnesses),
            violations=dict(self.counts),
            samples=samples,
            seed=seed,
        )


def _check_sampling_args(domain: Interval, n: int) -> None:
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    if not domain.finite:
        raise ValueError(f"axiom checking needs a finite domain, got {domain}")


def _uniform(rng: np.random.Generator, domain: Interval, n: int) -> np.ndarray:
    return domain.lo + (domain.hi - domain.lo) * rng.random(n)


def _distinct_pairs(rng: np.random.Generator, domain: Interval, n: int) -> list[tuple[float, float]]:
    # Rejection keeps pairs separated enough for strict-positivity checks.
    pairs: list[tuple[float, float]] = []
    while len(pairs) < n:
        xs = _uniform(rng, domain, n)
        ys = _uniform(rng, domain, n)
        for x, y in zip(xs, ys):
            if abs(x - y) > _MIN_SEPARATION and len(pairs) < n:
                pairs.append((float(x), float(y)))
    return pairs


def check_mult_axioms(d: MultMetric, domain: Interval, n: int, seed: int,
                      max_witnesses: int = 32) -> AxiomReport:
    """Sampled check of the multiplicative-metric axioms on ``domain``.

    Rules reported: "floor" (distance >= 1), "identity" (equal points at
    distance exactly 1), "separation" (distinct points strictly above 1),
    "symmetry", and "triangle" (the multiplicative triangle inequality).
    Deterministic given ``seed``; failures are data, not errors.
    """
    _check_sampling_args(domain, n)
    rng = np.random.default_rng(seed)
    rec = _Recorder(("floor", "identity", "separation", "symmetry", "triangle"), max_witnesses)

    lo, hi = domain.lo, domain.hi
    mid = 0.5 * (lo + hi)

    singles = [lo, hi, mid] + [float(v) for v in _uniform(rng, domain, n)]
    for p in singles:
        rec.require("identity", (p, p), d(p, p), 0.0, "==")

    pairs = [(lo, hi), (hi, lo), (lo, mid)] + _distinct_pairs(rng, domain, n)
    for x, y in pairs:
        dxy = d(x, y)
        rec.require("floor", (x, y), dxy, 0.0, ">=")
        rec.require("separation", (x, y), dxy, 0.0, ">")
        rec.require("symmetry", (x, y), dxy, d(y, x), "==")

    triples = [(lo, hi, mid), (lo, lo, hi)]
    triples += list(zip(*(map(float, _uniform(rng, domain, n)) for _ in range(3))))
    for x, y, z in triples:
        rec.require("triangle", (x, y, z), d(x, y), d(x, z) + d(z, y))

    return rec.report(d.description or "multiplicative metric", domain, n, seed)


_PERMUTATIONS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def check_gm_axioms(g: GMetric, domain: Interval, n: int, seed: int,
                    max_witnesses: int = 32) -> AxiomReport:
    """Sampled check of the ternary multiplicative-metric axioms.

    Rules reported: "identity" (G = 1 on the diagonal), "separation"
    (1 < G(x,x,y) for x != y), "pair_dominance" (G(x,x,y) <= G(x,y,z)
    whenever y != z), "permutation" (full symmetry in the arguments),
    and "rectangle" (G(x,y,z) <= G(x,t,t) * G(t,y,z) for every t).
    """
    _check_sampling_args(domain, n)
    rng = np.random.default_rng(seed)
    rec = _Recorder(("identity", "separation", "pair_dominance", "permutation", "rectangle"),
                    max_witnesses)

    lo, hi = domain.lo, domain.hi
    mid = 0.5 * (lo + hi)

    for p in [lo, hi, mid] + [float(v) for v in _uniform(rng, domain, n)]:
        rec.require("identity", (p, p, p), g(p, p, p), 0.0, "==")

    for x, y in [(lo, hi), (mid, hi)] + _distinct_pairs(rng, domain, n):
        rec.require("separation", (x, x, y), g(x, x, y), 0.0, ">")

    corner_triples = [(lo, lo, hi), (lo, hi, hi), (lo, mid, hi), (hi, mid, lo)]
    base = tuple(float(v) for v in _uniform(rng, domain, 3))
    corner_triples += [tuple(base[i] for i in p) for p in _PERMUTATIONS]
    triples = corner_triples + list(
        zip(*(map(float, _uniform(rng, domain, n)) for _ in range(3))))

    tvals = [lo, hi, mid] + [float(v) for v in _uniform(rng, domain, max(0, n - 3))]
    for i, (x, y, z) in enumerate(triples):
        gxyz = g(x, y, z)
        if abs(y - z) > _MIN_SEPARATION:
            rec.require("pair_dominance", (x, y, z), g(x, x, y), gxyz)
        for p in _PERMUTATIONS[1:]:
            px, py, pz = (x, y, z)[p[0]], (x, y, z)[p[1]], (x, y, z)[p[2]]
            rec.require("permutation", (px, py, pz), g(px, py, pz), gxyz, "==")
        t = tvals[i % len(tvals)]
        rec.require("rectangle", (x, y, z, t), gxyz, g(x, t, t) + g(t, y, z))

    return rec.report(g.description or "ternary multiplicative metric", domain, n, seed)


def check_gm_properties(g: GMetric, domain: Interval, n: int, seed: int,
                        max_witnesses: int = 32) -> AxiomReport:
    """Sampled check of derived consequences of the ternary axioms.

    Rules reported: "identity" (G = 1 on the diagonal), "star_bound"
    (G(x,y,z) <= G(x,t,t) * G(y,t,t) * G(z,t,t)), "pair_split"
    (G(x,y,z) <= G(x,x,y) * G(x,x,z)), and "swap_doubling"
    (G(x,y,y) <= G(y,x,x)^2).  These hold in any valid space and make
    useful smoke tests for user-supplied constructions.
    """
    _check_sampling_args(domain, n)
    rng = np.random.default_rng(seed)
    rec = _Recorder(("identity", "star_bound", "pair_split", "swap_doubling"), max_witnesses)

    lo, hi = domain.lo, domain.hi
    mid = 0.5 * (lo + hi)

    for p in [lo, hi, mid] + [float(v) for v in _uniform(rng, domain, n)]:
        rec.require("identity", (p, p, p), g(p, p, p), 0.0, "==")

    triples = [(lo, lo, hi), (lo, mid, hi), (hi, lo, mid)]
    triples += list(zip(*(map(float, _uniform(rng, domain, n)) for _ in range(3))))
    tvals = [mid, lo, hi] + [float(v) for v in _uniform(rng, domain, max(0, n - 3))]
    for i, (x, y, z) in enumerate(triples):
        gxyz = g(x, y, z)
        t = tvals[i % len(tvals)]
        rec.require("star_bound", (x, y, z, t), gxyz,
                    g(x, t, t) + g(y, t, t) + g(z, t, t))
        rec.require("pair_split", (x, y, z), gxyz, g(x, x, y) + g(x, x, z))

    for x, y in [(lo, hi), (hi, lo)] + _distinct_pairs(rng, domain, n):
        rec.require("swap_doubling", (x, y), g(x, y, y), 2.0 * g(y, x, x))

    return rec.report(g.description or "ternary multiplicative metric", domain, n, seed)
