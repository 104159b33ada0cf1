"""Box-constrained resource-allocation solver.

Maximizes a sum of expression objectives subject to inequality (g <= 0) and
equality (h = 0) constraints inside a variable box, via a quadratic-penalty
continuation solved by projected gradient descent with backtracking line
search and a deterministic 8-point multi-start schedule.

Global optimality is not promised; the contract is oracle dominance against
dense grid search on small instances, exact feasibility reporting, and
bit-for-bit deterministic reruns.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EvaluationError, InputError, UnsolvableError
from .expressions import (
    Node,
    RESERVED_NAMES,
    compile_expression,
    parse_expression,
    variables_in,
)

FEASIBILITY_TOL = 1e-6

_ARMIJO_C = 1e-4
_INNER_MAX_ITER = 500
_PG_NORM_TOL = 1e-8
_RHO_SCHEDULE = tuple(10.0 ** k for k in range(9))  # 1 .. 1e8
_N_STARTS = 8
_START_SEED = 42

_IDENT_RE = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*\Z")


@dataclass(frozen=True)
class VariableSpec:
    """One decision variable with its box bounds."""

    name: str
    lower: float
    upper: float

    def __post_init__(self):
        if not _IDENT_RE.match(self.name):
            raise InputError(f"invalid variable name {self.name!r}")
        if self.name in RESERVED_NAMES:
            raise InputError(f"variable name {self.name!r} is reserved")
        if not (self.lower < self.upper):
            raise InputError(
                f"variable {self.name!r} needs lower < upper, got "
                f"[{self.lower!r}, {self.upper!r}]"
            )


@dataclass(frozen=True)
class OptimizationProblem:
    """Decision box, objective components, constraints, and the fixed time."""

    variables: tuple[VariableSpec, ...]
    objectives: tuple[Node, ...]
    inequalities: tuple[Node, ...] = ()
    equalities: tuple[Node, ...] = ()
    time_value: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "objectives", tuple(self.objectives))
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        object.__setattr__(self, "equalities", tuple(self.equalities))
        if len(self.variables) < 1:
            raise InputError("problem needs at least one decision variable")
        if len(self.objectives) < 1:
            raise InputError("problem needs at least one objective component")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise InputError("duplicate variable names")
        declared = frozenset(names)
        for node in (*self.objectives, *self.inequalities, *self.equalities):
            loose = variables_in(node) - declared - {"t"}
            if loose:
                raise InputError(f"expression references undeclared {sorted(loose)}")

    @classmethod
    def from_strings(
        cls,
        variables: Sequence[tuple[str, float, float]],
        objectives: Sequence[str],
        inequalities: Sequence[str] = (),
        equalities: Sequence[str] = (),
        time_value: float = 0.0,
    ) -> "OptimizationProblem":
        specs = tuple(VariableSpec(n, float(lo), float(hi)) for n, lo, hi in variables)
        declared = frozenset(s.name for s in specs)
        return cls(
            variables=specs,
            objectives=tuple(parse_expression(src, declared) for src in objectives),
            inequalities=tuple(parse_expression(src, declared) for src in inequalities),
            equalities=tuple(parse_expression(src, declared) for src in equalities),
            time_value=float(time_value),
        )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)


@dataclass(frozen=True)
class SolveDiagnostics:
    starts_tried: int
    iterations: int
    penalty_at_exit: float


@dataclass(frozen=True)
class Solution:
    """Best candidate found: assignment, objective, violations, feasibility."""

    assignment: dict[str, float]
    objective_value: float
    max_inequality_violation: float
    max_equality_violation: float
    feasible: bool
    diagnostics: SolveDiagnostics


class _Evaluator:
    """Vector <-> assignment bridge over one problem.

    Expressions are compiled once per solve; the penalty loop evaluates them
    thousands of times. The finite-difference scheme here mirrors the public
    gradient(): central differences with h = 1e-6 * max(1, |x_i|).
    """

    def __init__(self, problem: OptimizationProblem):
        self.problem = problem
        self.names = problem.names
        self.t = problem.time_value
        self._objectives = [compile_expression(f) for f in problem.objectives]
        self._inequalities = [compile_expression(g) for g in problem.inequalities]
        self._equalities = [compile_expression(h) for h in problem.equalities]

    def assignment(self, x: np.ndarray) -> dict[str, float]:
        return {name: float(v) for name, v in zip(self.names, x)}

    def objective(self, x: np.ndarray) -> float:
        a = self.assignment(x)
        return math.fsum(f(a, self.t) for f in self._objectives)

    def violations(self, x: np.ndarray) -> tuple[float, float]:
        a = self.assignment(x)
        ineq = max((max(0.0, g(a, self.t)) for g in self._inequalities), default=0.0)
        eq = max((abs(h(a, self.t)) for h in self._equalities), default=0.0)
        return ineq, eq

    def penalty_value(self, x: np.ndarray, rho: float) -> float:
        a = self.assignment(x)
        t = self.t
        total = -math.fsum(f(a, t) for f in self._objectives)
        pen = 0.0
        for g in self._inequalities:
            pen += max(0.0, g(a, t)) ** 2
        for h in self._equalities:
            pen += h(a, t) ** 2
        return total + rho * pen

    def _fd_gradient(self, fn, a: dict[str, float]) -> np.ndarray:
        grad = np.empty(len(self.names))
        t = self.t
        for i, name in enumerate(self.names):
            x = a[name]
            h = 1e-6 * max(1.0, abs(x))
            a[name] = x + h
            f_plus = fn(a, t)
            a[name] = x - h
            f_minus = fn(a, t)
            a[name] = x
            grad[i] = (f_plus - f_minus) / (2.0 * h)
        return grad

    def penalty_gradient(self, x: np.ndarray, rho: float) -> np.ndarray:
        a = self.assignment(x)
        t = self.t
        grad = np.zeros(len(self.names))
        for f in self._objectives:
            grad -= self._fd_gradient(f, a)
        for g in self._inequalities:
            gv = g(a, t)
            if gv > 0.0:
                grad += 2.0 * rho * gv * self._fd_gradient(g, a)
        for h in self._equalities:
            hv = h(a, t)
            grad += 2.0 * rho * hv * self._fd_gradient(h, a)
        return grad


def _start_points(problem: OptimizationProblem) -> list[np.ndarray]:
    """Deterministic multi-start schedule: corners of the first <=3 variables
    (others at center), then the center, then seeded uniform points, 8 total."""
    lo = np.array([v.lower for v in problem.variables])
    hi = np.array([v.upper for v in problem.variables])
    mid = (lo + hi) / 2.0
    k = min(3, len(problem.variables))
    starts: list[np.ndarray] = []
    for corner in range(2 ** k):
        x = mid.copy()
        for j in range(k):
            x[j] = hi[j] if (corner >> j) & 1 else lo[j]
        starts.append(x)
        if len(starts) == _N_STARTS:
            return starts
    starts.append(mid.copy())
    rng = np.random.default_rng(_START_SEED)
    while len(starts) < _N_STARTS:
        starts.append(lo + rng.random(len(lo)) * (hi - lo))
    return starts[:_N_STARTS]


def _project(x: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    return np.minimum(np.maximum(x, lo), hi)


def solve(problem: OptimizationProblem) -> Solution:
    """Maximize the summed objectives under the declared constraints.

    Runs the quadratic-penalty continuation (rho = 1, 10, ..., 1e8, stopping
    early once violations fall within 1e-6) from each start; inner
    minimization is projected gradient descent with Armijo backtracking.
    Returns the best feasible candidate, or the least-violating candidate
    flagged infeasible. Raises UnsolvableError only when no start point is
    even evaluable.
    """
    ev = _Evaluator(problem)
    lo = np.array([v.lower for v in problem.variables])
    hi = np.array([v.upper for v in problem.variables])

    candidates: list[tuple[np.ndarray, float, float, float, float]] = []
    starts_tried = 0
    total_iterations = 0

    for start in _start_points(problem):
        starts_tried += 1
        x = start.copy()
        try:
            ev.penalty_value(x, 1.0)
        except EvaluationError:
            continue
        rho_exit = _RHO_SCHEDULE[0]
        aborted = False
        for rho in _RHO_SCHEDULE:
            rho_exit = rho
            x, iters, aborted = _inner_minimize(ev, x, rho, lo, hi)
            total_iterations += iters
            try:
                ineq, eq = ev.violations(x)
            except EvaluationError:
                aborted = True
                break
            if max(ineq, eq) <= FEASIBILITY_TOL:
                break
        try:
            obj = ev.objective(x)
            ineq, eq = ev.violations(x)
        except EvaluationError:
            continue
        candidates.append((x, obj, ineq, eq, rho_exit))

    if not candidates:
        raise UnsolvableError("objective/constraints not evaluable from any start point")

    def rank(c):
        _, obj, ineq, eq, _ = c
        feasible = max(ineq, eq) <= FEASIBILITY_TOL
        # feasible candidates first, best objective; then least violating
        return (0, -obj) if feasible else (1, max(ineq, eq), -obj)

    best = min(candidates, key=rank)
    x, obj, ineq, eq, rho_exit = best
    return Solution(
        assignment=ev.assignment(x),
        objective_value=obj,
        max_inequality_violation=ineq,
        max_equality_violation=eq,
        feasible=max(ineq, eq) <= FEASIBILITY_TOL,
        diagnostics=SolveDiagnostics(
            starts_tried=starts_tried,
            iterations=total_iterations,
            penalty_at_exit=rho_exit,
        ),
    )


def _inner_minimize(
    ev: _Evaluator,
    x0: np.ndarray,
    rho: float,
    lo: np.ndarray,
    hi: np.ndarray,
) -> tuple[np.ndarray, int, bool]:
    """Projected gradient descent on the penalized objective.

    Returns (point, accepted iterations, aborted-by-evaluation-error).
    """
    x = _project(x0, lo, hi)
    try:
        fx = ev.penalty_value(x, rho)
    except EvaluationError:
        return x, 0, True
    iterations = 0
    for _ in range(_INNER_MAX_ITER):
        try:
            g = ev.penalty_gradient(x, rho)
        except EvaluationError:
            return x, iterations, True
        pg = x - _project(x - g, lo, hi)
        if float(np.linalg.norm(pg)) <= _PG_NORM_TOL:
            break
        step_floor = 1e-16 * (1.0 + float(np.max(np.abs(x))))
        alpha = 1.0
        accepted = False
        while alpha >= 1e-20:
            if alpha * float(np.max(np.abs(g))) <= step_floor:
                break  # no representable movement left at this scale
            xn = _project(x - alpha * g, lo, hi)
            try:
                fn = ev.penalty_value(xn, rho)
            except EvaluationError:
                alpha *= 0.5
                continue
            if fn <= fx + _ARMIJO_C * float(np.dot(g, xn - x)):
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            break
        stalled = fx - fn <= 1e-15 * max(1.0, abs(fx))
        x, fx = xn, fn
        iterations += 1
        if stalled:
            break  # descent has hit float resolution; more steps cannot help
    return x, iterations, False
