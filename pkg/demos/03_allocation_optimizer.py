#!/usr/bin/env python3
"""Solve a small migration resource-allocation scenario.

Budget split across three workstreams with diminishing returns, one budget
cap and a fairness coupling between two of the streams. Objectives and
constraints are plain expression strings.
"""
from quasar_workbench import OptimizationProblem, solve


def main() -> None:
    problem = OptimizationProblem.from_strings(
        variables=[
            ("inventory", 0.0, 1.0),
            ("migration", 0.0, 1.0),
            ("training", 0.0, 1.0),
        ],
        objectives=[
            "log(1 + 3*inventory)",   # early discovery pays off fast
            "log(1 + 2*migration)",
            "log(1 + training)",
        ],
        inequalities=[
            "inventory + migration + training - 1",  # unit budget
        ],
        equalities=[
            "migration - 2*training",  # every migration push needs half as much training
        ],
    )
    solution = solve(problem)
    print("allocation:")
    for name, value in solution.assignment.items():
        print(f"  {name:10s} {value:.4f}")
    print(f"objective value     : {solution.objective_value:.6f}")
    print(f"feasible            : {solution.feasible}")
    print(f"max violations      : ineq {solution.max_inequality_violation:.2e}, "
          f"eq {solution.max_equality_violation:.2e}")
    print(f"diagnostics         : {solution.diagnostics}")


if __name__ == "__main__":
    main()
