"""Walk the worked 2x2 instance through the whole pipeline.

Loads data/uneven2x2.json, prints the hide-and-seek game, solves it by
pivoting, verifies the mapped outcome, and finishes with the brute-force
enumeration so the solver's answer can be seen inside the full stable set.
"""
import json
import sys
from pathlib import Path

from ltumatch import (
    enumerate_stable,
    expected_values,
    outcome_to_equilibrium,
    solve_stable,
    to_game,
    validate_problem,
    verify_stable,
)

ROOT = Path(__file__).resolve().parent.parent


def show(problem, outcome, indent="  "):
    for x in range(problem.nx):
        for y in range(problem.ny):
            mass = outcome.mu[x][y]
            if mass != 0:
                print(f"{indent}{problem.workers[x]} -> {problem.jobs[y]}: {mass}")
    us = ", ".join(f"{w}={u}" for w, u in zip(problem.workers, outcome.u))
    vs = ", ".join(f"{j}={v}" for j, v in zip(problem.jobs, outcome.v))
    print(f"{indent}u: {us}")
    print(f"{indent}v: {vs}")


def main() -> int:
    problem = validate_problem(
        json.loads((ROOT / "data" / "uneven2x2.json").read_text())
    )
    game = to_game(problem)

    print("loss matrix (rows hide in a pair, columns search a type):")
    for row_label, row in zip(game.rows, game.loss):
        cells = "  ".join(str(c).rjust(4) for c in row)
        print(f"  {'/'.join(row_label)}: {cells}")
    print("payoff matrix:")
    for row_label, row in zip(game.rows, game.payoff):
        cells = "  ".join(str(c).rjust(4) for c in row)
        print(f"  {'/'.join(row_label)}: {cells}")

    outcome, profile = solve_stable(problem)
    hider_loss, seeker_payoff = expected_values(game, profile)
    print("\npivot solver outcome:")
    show(problem, outcome)
    print(f"  hider loss {hider_loss}, seeker payoff {seeker_payoff}")

    report = verify_stable(problem, outcome)
    print(f"  stable: {report.ok}")
    back = outcome_to_equilibrium(problem, outcome)
    print(f"  maps back to the same profile: {back == profile}")

    print("\nevery stable outcome, by brute force:")
    for k, other in enumerate(enumerate_stable(problem)):
        print(f"outcome {k}:")
        show(problem, other)
    return 0


if __name__ == "__main__":
    sys.exit(main())
