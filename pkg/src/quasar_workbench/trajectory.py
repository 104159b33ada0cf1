"""Time-dependent transformation curves and their calibration.

Covers the exponential preparedness transition P(t), the implementation
progress curve I(t), the short/medium/long-term action-impact functions, a
uniform-grid sampler bundling all five series, and least-squares recovery of
the transformation rate from observed history.

Time is dimensionless ("planning periods"); the rate constants carry the
inverse unit. All functions are pure; all types are immutable values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegenerateError, DimensionError, DomainError, InputError

# Exponent clamp: keeps exp() finite on absurd rate*time products while
# leaving every sane input bit-exact.
_EXP_CLAMP = 700.0

HORIZONS = ("short", "medium", "long")
LT_MODES = ("literal", "prose")

# fit_lambda search interval and schedule
LAMBDA_LO = 1e-6
LAMBDA_HI = 1e3
_COARSE_GRID_POINTS = 200
_GOLDEN_REL_TOL = 1e-6


def _decay(rate: float, t: float) -> float:
    x = min(rate * t, _EXP_CLAMP)
    return math.exp(-x)


@dataclass(frozen=True)
class TrajectoryParams:
    """Preparedness transition parameters: start alpha, target beta, rate lam."""

    alpha: float
    beta: float
    lam: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0):
            raise InputError(f"alpha {self.alpha!r} outside [0, 1]")
        if not (0.0 <= self.beta <= 1.0):
            raise InputError(f"beta {self.beta!r} outside [0, 1]")
        if not (self.lam > 0.0):
            raise InputError(f"lambda {self.lam!r} must be positive")


@dataclass(frozen=True)
class ProgressParams:
    """Implementation progress parameters: initial i0 <= final i_f, rate k."""

    i0: float
    i_f: float
    k: float

    def __post_init__(self):
        if not (0.0 <= self.i0 <= 1.0) or not (0.0 <= self.i_f <= 1.0):
            raise InputError("i0 and i_f must lie in [0, 1]")
        if self.i0 > self.i_f:
            raise InputError(f"i0 {self.i0!r} exceeds i_f {self.i_f!r}")
        if not (self.k > 0.0):
            raise InputError(f"k {self.k!r} must be positive")


@dataclass(frozen=True)
class Action:
    """One planned action: a named impact magnitude at a planning horizon."""

    name: str
    impact: float
    horizon: str

    def __post_init__(self):
        if self.impact < 0.0:
            raise InputError(f"action {self.name!r} has negative impact {self.impact!r}")
        if self.horizon not in HORIZONS:
            raise InputError(
                f"action {self.name!r} horizon {self.horizon!r} not one of {HORIZONS}"
            )


@dataclass(frozen=True)
class ActionSet:
    """Immutable collection of actions, filterable by horizon."""

    actions: tuple[Action, ...]

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))

    @classmethod
    def of(cls, items: Iterable[tuple[str, float, str]]) -> "ActionSet":
        return cls(tuple(Action(name, impact, horizon) for name, impact, horizon in items))

    def total_impact(self, horizon: str) -> float:
        if horizon not in HORIZONS:
            raise InputError(f"unknown horizon {horizon!r}")
        return math.fsum(a.impact for a in self.actions if a.horizon == horizon)


EMPTY_ACTIONS = ActionSet(())


@dataclass(frozen=True)
class TimeSeries:
    """Sampled values over strictly increasing time points."""

    times: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.times) != len(self.values):
            raise DimensionError(
                f"{len(self.times)} times vs {len(self.values)} values"
            )
        for a, b in zip(self.times, self.times[1:]):
            if not (b > a):
                raise InputError("time points must be strictly increasing")


def phase_transformation(p: TrajectoryParams, t: float) -> float:
    """Preparedness at time t: alpha*e^(-lam*t) + beta*(1 - e^(-lam*t)).

    Decays exponentially from the initial state toward the target; the value
    always lies between min(alpha, beta) and max(alpha, beta).
    """
    if t < 0.0:
        raise DomainError(f"time {t!r} must be nonnegative")
    d = _decay(p.lam, t)
    return p.alpha * d + p.beta * (1.0 - d)


def implementation_progress(p: ProgressParams, t: float) -> float:
    """Implementation progress at time t: i0 + (i_f - i0)*(1 - e^(-k*t))."""
    if t < 0.0:
        raise DomainError(f"time {t!r} must be nonnegative")
    return p.i0 + (p.i_f - p.i0) * (1.0 - _decay(p.k, t))


def timeline_value(
    actions: ActionSet,
    horizon: str,
    lam: float,
    t: float,
    mode: str = "literal",
) -> float:
    """Aggregate action impact at time t for one planning horizon.

    Short-term impact decays as e^(-lam*t); medium-term grows as
    1 - e^(-lam*t). The long-term factor is 1 - e^(-2*lam*t) in literal mode.
    Prose mode instead ramps long-term actions more slowly than medium-term
    ones, using 1 - e^(-lam*t/2); see the module README discussion.
    """
    if horizon not in HORIZONS:
        raise InputError(f"unknown horizon {horizon!r}; expected one of {HORIZONS}")
    if mode not in LT_MODES:
        raise InputError(f"unknown long-term mode {mode!r}; expected one of {LT_MODES}")
    if not (lam > 0.0):
        raise InputError(f"lambda {lam!r} must be positive")
    if t < 0.0:
        raise DomainError(f"time {t!r} must be nonnegative")
    total = actions.total_impact(horizon)
    if horizon == "short":
        return total * _decay(lam, t)
    if horizon == "medium":
        return total * (1.0 - _decay(lam, t))
    if mode == "literal":
        return total * (1.0 - _decay(2.0 * lam, t))
    return total * (1.0 - _decay(lam / 2.0, t))


@dataclass(frozen=True)
class SeriesBundle:
    """The five projected series over one shared grid."""

    preparedness: TimeSeries
    progress: TimeSeries
    short_term: TimeSeries
    medium_term: TimeSeries
    long_term: TimeSeries

    @property
    def times(self) -> tuple[float, ...]:
        return self.preparedness.times


def project_series(
    p: TrajectoryParams,
    q: ProgressParams,
    actions: ActionSet,
    horizon_end: float,
    step: float,
    mode: str = "literal",
) -> SeriesBundle:
    """Sample P, I, ST, MT and LT on the uniform grid 0, step, ..., <= horizon_end."""
    if not (step > 0.0):
        raise InputError(f"step {step!r} must be positive")
    if horizon_end < step:
        raise InputError(f"horizon end {horizon_end!r} must be at least one step")
    n_steps = int(math.floor(horizon_end / step + 1e-9))
    times = tuple(i * step for i in range(n_steps + 1))
    p_vals = tuple(phase_transformation(p, t) for t in times)
    i_vals = tuple(implementation_progress(q, t) for t in times)
    st = tuple(timeline_value(actions, "short", p.lam, t, mode) for t in times)
    mt = tuple(timeline_value(actions, "medium", p.lam, t, mode) for t in times)
    lt = tuple(timeline_value(actions, "long", p.lam, t, mode) for t in times)
    return SeriesBundle(
        preparedness=TimeSeries(times, p_vals),
        progress=TimeSeries(times, i_vals),
        short_term=TimeSeries(times, st),
        medium_term=TimeSeries(times, mt),
        long_term=TimeSeries(times, lt),
    )


def series_to_csv(bundle: SeriesBundle) -> str:
    """CSV export: header t,P,I,ST,MT,LT; values at 9 significant digits."""
    lines = ["t,P,I,ST,MT,LT"]
    for i, t in enumerate(bundle.times):
        row = (
            t,
            bundle.preparedness.values[i],
            bundle.progress.values[i],
            bundle.short_term.values[i],
            bundle.medium_term.values[i],
            bundle.long_term.values[i],
        )
        lines.append(",".join(f"{v:.9g}" for v in row))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LambdaFit:
    """fit_lambda result: the rate, its squared-residual sum, saturation flag."""

    lam: float
    residual: float
    saturated: bool


def fit_lambda(
    observations: Sequence[tuple[float, float]],
    alpha: float,
    beta: float,
) -> LambdaFit:
    """Least-squares recovery of the transformation rate from history.

    Minimizes sum_i (P(t_i; alpha, beta, lam) - obs_i)^2 over
    lam in [1e-6, 1e3]: a 200-point log-spaced coarse grid followed by
    golden-section refinement of the bracketing interval to relative
    tolerance 1e-6. Only observations with t > 0 carry information about the
    rate; at least two distinct such times are required. A fit pinned to the
    edge of the search interval is flagged saturated.
    """
    if not (0.0 <= alpha <= 1.0) or not (0.0 <= beta <= 1.0):
        raise InputError("alpha and beta must lie in [0, 1]")
    if alpha == beta:
        raise DegenerateError("alpha == beta makes the rate unidentifiable")
    usable = [(float(t), float(v)) for t, v in observations if t > 0.0]
    if len(usable) < 2 or len({t for t, _ in usable}) < 2:
        raise InputError(
            "need at least 2 observations at distinct positive times; "
            f"got {len(usable)} usable"
        )

    def sse(lam: float) -> float:
        acc = 0.0
        for t, obs in usable:
            d = _decay(lam, t)
            acc += (alpha * d + beta * (1.0 - d) - obs) ** 2
        return acc

    log_lo, log_hi = math.log10(LAMBDA_LO), math.log10(LAMBDA_HI)
    grid = [
        10.0 ** (log_lo + (log_hi - log_lo) * i / (_COARSE_GRID_POINTS - 1))
        for i in range(_COARSE_GRID_POINTS)
    ]
    errs = [sse(lam) for lam in grid]
    # exact ties (all-beta observations leave a zero-SSE plateau) resolve to
    # the fastest rate so saturation lands at the upper search bound
    best = min(range(len(grid)), key=lambda i: (errs[i], -i))
    saturated = best in (0, len(grid) - 1)

    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, len(grid) - 1)]
    lam_hat = _golden_section(sse, a, b)
    return LambdaFit(lam=lam_hat, residual=sse(lam_hat), saturated=saturated)


def _golden_section(f, a: float, b: float) -> float:
    """Golden-section minimum of a unimodal f on [a, b] to 1e-6 relative width."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > _GOLDEN_REL_TOL * max(abs(a), abs(b), 1e-12):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2.0
