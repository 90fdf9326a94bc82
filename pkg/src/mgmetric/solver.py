"""Picard iteration with certified geometric error bounds.

The solver iterates x_{j+1} = F(x_j) and stops on the computable
residual g(x_j, Fx_j, Fx_j) <= ln(1 + epsilon), which by the ternary
convergence criterion pins x_j to within epsilon (multiplicatively) of
a fixed point.  When the contraction factor is known it also reports an
a-priori iteration bound from the geometric tail:

    rate**j * g(x0, Fx0, Fx0) / (1 - rate) <= ln(1 + epsilon),

with rate = eta for the root condition.  For the implicit condition the
per-step factor telescopes to mu = eta / (1 - eta); the bound is only
certifiable when mu < 1, i.e. eta < 1/2.  For larger eta the solver
still runs best-effort and flags the rate as uncertified.
"""

from __future__ import annotations

import io
import csv
import math
import operator
from dataclasses import dataclass, asdict
from typing import Callable

from .metric import ClosedBall, GMetric, LogDistance, Point, ball_contains
from .contraction import ContractionParams, SelfMap, seed_condition_holds


class DomainExit(RuntimeError):
    """An iterate left the self-map's declared domain."""

    def __init__(self, index: int, point: float):
        super().__init__(f"iterate {index} = {point} left the map's domain")
        self.index = index
        self.point = point


class SeedConditionViolated(RuntimeError):
    """The seed point fails the admissibility condition for its ball."""


class RateOutOfRange(ValueError):
    """A geometric rate >= 1 cannot certify an iteration bound."""


class MaxIterationsExceeded(RuntimeError):
    """The residual did not reach tolerance within the iteration budget."""

    def __init__(self, iterations: int, last_point: float, last_residual_log: float):
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(last point {last_point}, residual log {last_residual_log})")
        self.iterations = iterations
        self.last_point = last_point
        self.last_residual_log = last_residual_log


@dataclass(frozen=True)
class OrderRelation:
    """A partial-order predicate used to audit orbit monotonicity."""

    leq: Callable[[Point, Point], bool]
    description: str = ""

    def __call__(self, a: Point, b: Point) -> bool:
        return self.leq(a, b)


NUMERIC_ORDER = OrderRelation(leq=operator.le, description="numeric <=")


@dataclass(frozen=True)
class PicardTrace:
    """Recorded orbit: iterates x_0..x_J, per-step log-distances
    g(x_j, x_{j+1}, x_{j+1}), a ball flag per iterate, and whether the
    orbit was non-increasing under the order relation."""

    iterates: tuple[float, ...]
    step_logs: tuple[float, ...]
    in_ball: tuple[bool, ...]
    monotone: bool

    def __post_init__(self) -> None:
        if len(self.step_logs) != len(self.iterates) - 1:
            raise ValueError("trace needs exactly one step log per transition")
        if len(self.in_ball) != len(self.iterates):
            raise ValueError("trace needs exactly one ball flag per iterate")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_csv(self) -> str:
        """Rows of (index, value, step_log, in_ball); the final row has
        no step log."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "value", "step_log", "in_ball"])
        for j, x in enumerate(self.iterates):
            step = repr(self.step_logs[j]) if j < len(self.step_logs) else ""
            writer.writerow([j, repr(x), step, self.in_ball[j]])
        return buf.getvalue()


@dataclass(frozen=True)
class FixedPointResult:
    """A located fixed point with its residual certificate.

    ``certified_bound`` is the a-priori iteration count, or None when
    the geometric rate was >= 1 (uncertified best-effort run).  ``mu``
    and ``mu_class`` are filled in implicit mode only; ``mu_class`` is
    "below_half", "below_one", or "at_least_one".
    """

    point: Point
    residual_log: LogDistance
    iterations_used: int
    certified_bound: int | None
    trace: PicardTrace
    rate: float
    rate_certified: bool
    mu: float | None = None
    mu_class: str | None = None

    @property
    def ball_exited(self) -> bool:
        return not all(self.trace.in_ball)

    @property
    def order_monotone(self) -> bool:
        return self.trace.monotone

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["trace"] = self.trace.to_dict()
        doc["ball_exited"] = self.ball_exited
        doc["order_monotone"] = self.order_monotone
        return doc


def picard_trace(F: SelfMap, x0: Point, steps: int, g: GMetric,
                 ball: ClosedBall, order: OrderRelation) -> PicardTrace:
    """Roll the orbit forward a fixed number of steps (no stopping rule).

    Raises DomainExit as soon as an iterate leaves F's domain.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    iterates = [x0]
    step_logs: list[float] = []
    monotone = True
    x = x0
    for j in range(steps):
        if not F.domain.contains(x):
            raise DomainExit(j, x)
        nxt = F(x)
        step_logs.append(g(x, nxt, nxt))
        monotone = monotone and order(nxt, x)
        iterates.append(nxt)
        x = nxt
    if steps > 0 and not F.domain.contains(x):
        raise DomainExit(steps, x)
    flags = tuple(ball_contains(g, ball, p) for p in iterates)
    return PicardTrace(tuple(iterates), tuple(step_logs), flags, monotone)


def step_bound(log_g01: LogDistance, eta: float, j: int) -> LogDistance:
    """Per-step a-priori bound eta**j * g(x0, x1, x1), in log-domain."""
    if not (0.0 <= eta < 1.0):
        raise ValueError(f"eta must lie in [0, 1), got {eta}")
    if j < 0:
        raise ValueError(f"step index must be >= 0, got {j}")
    return (eta ** j) * log_g01


def a_priori_iterations(log_g01: LogDistance, rate: float, epsilon: float) -> int:
    """Smallest j >= 0 with rate**j * log_g01 / (1 - rate) <= ln(1 + epsilon).

    This is the coarse geometric tail of the telescoped step bounds
    (dropping a factor < 1), so it is always a valid stopping index for
    a genuine contraction.  Raises RateOutOfRange when rate >= 1.
    """
    if log_g01 < 0.0:
        raise ValueError(f"log distance must be >= 0, got {log_g01}")
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if not 0.0 <= rate < 1.0:
        raise RateOutOfRange(f"geometric rate must lie in [0, 1), got {rate}")

    tol = math.log1p(epsilon)
    tail0 = log_g01 / (1.0 - rate)
    if tail0 <= tol:
        return 0
    if rate == 0.0:
        return 1
    # Closed form, then a local walk to absorb float rounding.
    j = max(0, math.ceil(math.log(tol / tail0) / math.log(rate)))
    while j > 0 and (rate ** (j - 1)) * tail0 <= tol:
        j -= 1
    while (rate ** j) * tail0 > tol:
        j += 1
    return j


def converged(g: GMetric, x: Point, p: Point, epsilon: float) -> bool:
    """Multiplicative convergence test: g(x, p, p) <= ln(1 + epsilon)."""
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    return g(x, p, p) <= math.log1p(epsilon)


def mu_of(eta: float) -> float:
    """Telescoped per-step rate eta / (1 - eta) of the implicit condition."""
    if not (0.0 <= eta < 1.0):
        raise ValueError(f"eta must lie in [0, 1), got {eta}")
    return eta / (1.0 - eta)


def mu_class(mu: float) -> str:
    """Classify a telescoped rate: "below_half" and "below_one" admit a
    certified geometric bound, "at_least_one" does not."""
    if mu < 0.5:
        return "below_half"
    if mu < 1.0:
        return "below_one"
    return "at_least_one"


def solve_fixed_point(g: GMetric, F: SelfMap, order: OrderRelation,
                      params: ContractionParams, mode: str = "root",
                      epsilon: float = 1e-6, max_iter: int = 10_000,
                      require_certified: bool = False) -> FixedPointResult:
    """Run Picard iteration from the seed until the residual certifies a
    fixed point.

    The seed condition is checked first and SeedConditionViolated raised
    on failure.  ``mode`` selects the rate for the a-priori bound: eta
    for "root", mu = eta / (1 - eta) for "implicit".  A rate >= 1 cannot
    be certified; by default the solver then runs best-effort with
    ``certified_bound`` = None and ``rate_certified`` = False, or raises
    RateOutOfRange when ``require_certified`` is set.

    Raises DomainExit if the orbit leaves F's domain and
    MaxIterationsExceeded if the residual never reaches tolerance.
    Leaving the ball is recorded per-iterate in the trace, not raised.
    """
    if mode not in ("root", "implicit"):
        raise ValueError(f"mode must be 'root' or 'implicit', got {mode!r}")
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if max_iter < 0:
        raise ValueError(f"max_iter must be >= 0, got {max_iter}")

    if not seed_condition_holds(g, F, params):
        budget = (1.0 - params.eta) * params.gamma
        raise SeedConditionViolated(
            f"seed {params.seed_point} has log-distance "
            f"{g(params.seed_point, F(params.seed_point), F(params.seed_point))} "
            f"to its image, above the budget ln({budget})")

    mu = mu_of(params.eta) if mode == "implicit" else None
    rate = params.eta if mode == "root" else mu
    rate_certified = rate < 1.0
    if not rate_certified and require_certified:
        raise RateOutOfRange(
            f"implicit mode with eta = {params.eta} gives rate mu = {mu} >= 1; "
            "rerun with require_certified=False for a best-effort solve")

    tol = math.log1p(epsilon)
    iterates = [params.seed_point]
    step_logs: list[float] = []
    monotone = True
    log_g01: float | None = None
    x = params.seed_point
    point = residual = None
    iterations = 0
    for j in range(max_iter + 1):
        if not F.domain.contains(x):
            raise DomainExit(j, x)
        nxt = F(x)
        r = g(x, nxt, nxt)
        if log_g01 is None:
            log_g01 = r
        if r <= tol:
            point, residual, iterations = x, r, j
            break
        if j == max_iter:
            raise MaxIterationsExceeded(j, x, r)
        step_logs.append(r)
        monotone = monotone and order(nxt, x)
        iterates.append(nxt)
        x = nxt

    ball = params.ball
    flags = tuple(ball_contains(g, ball, p) for p in iterates)
    trace = PicardTrace(tuple(iterates), tuple(step_logs), flags, monotone)
    bound = a_priori_iterations(log_g01, rate, epsilon) if rate_certified else None

    return FixedPointResult(
        point=point,
        residual_log=residual,
        iterations_used=iterations,
        certified_bound=bound,
        trace=trace,
        rate=rate,
        rate_certified=rate_certified,
        mu=mu,
        mu_class=mu_class(mu) if mu is not None else None,
    )
