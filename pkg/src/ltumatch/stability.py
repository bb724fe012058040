"""Stability checking for matching outcomes, with itemized violations.

An outcome (mu, u, v) is stable when, with zero reservation utilities:

  0. everything is nonnegative;
  1. no pair can block: lambda u_x + (1 - lambda) v_y >= phi / 2 per pair;
  2. workers are not overmatched: sum_y mu[x][y] <= n_x;
  3. jobs are not overmatched: sum_x mu[x][y] <= m_y;
  4. matched pairs split exactly: mu[x][y] > 0 forces equality in 1;
  5. a worker type earning anything is fully matched;
  6. a job type earning anything is fully matched.

The checker reports every violated condition with the two sides of the failed
comparison, so a negative verdict is a finite certificate a reader can check
by hand. The many-to-one variant drops conditions 3, 5, 6 (each arrangement
already prices its members, masses must clear exactly, and utilities may go
negative since reservations live inside the single-worker arrangements).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import ArrangementOutcome, LTUProblem, ManyToOneProblem, Outcome

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Violation:
    """One failed comparison: `lhs` versus `rhs` under `relation`."""

    condition: int
    kind: str
    where: str
    relation: str
    lhs: Fraction
    rhs: Fraction

    def describe(self) -> str:
        return (
            f"condition {self.condition} ({self.kind}) at {self.where}: "
            f"{self.lhs} {self.relation} {self.rhs} fails"
        )


@dataclass(frozen=True)
class StabilityReport:
    ok: bool
    violations: tuple[Violation, ...]


def _shape_matches(problem: LTUProblem, outcome: Outcome) -> bool:
    return (
        len(outcome.mu) == problem.nx
        and all(len(row) == problem.ny for row in outcome.mu)
        and len(outcome.u) == problem.nx
        and len(outcome.v) == problem.ny
    )


def verify_stable(problem: LTUProblem, outcome: Outcome) -> StabilityReport:
    """Check all seven conditions; collect every violation."""
    if not _shape_matches(problem, outcome):
        bad = Violation(0, "shape", "outcome", "matches",
                        Fraction(len(outcome.u)), Fraction(problem.nx))
        return StabilityReport(False, (bad,))
    out: list[Violation] = []
    for x, wid in enumerate(problem.workers):
        for y, jid in enumerate(problem.jobs):
            if outcome.mu[x][y] < 0:
                out.append(Violation(0, "sign", f"mu[{wid},{jid}]", ">=",
                                     outcome.mu[x][y], ZERO))
    for x, wid in enumerate(problem.workers):
        if outcome.u[x] < 0:
            out.append(Violation(0, "sign", f"u[{wid}]", ">=", outcome.u[x], ZERO))
    for y, jid in enumerate(problem.jobs):
        if outcome.v[y] < 0:
            out.append(Violation(0, "sign", f"v[{jid}]", ">=", outcome.v[y], ZERO))

    for x, wid in enumerate(problem.workers):
        for y, jid in enumerate(problem.jobs):
            lam = problem.lam[x][y]
            split = lam * outcome.u[x] + (ONE - lam) * outcome.v[y]
            half = problem.phi[x][y] / 2
            if split < half:
                out.append(Violation(1, "blocking", f"({wid},{jid})", ">=", split, half))
            elif outcome.mu[x][y] > 0 and split != half:
                out.append(Violation(4, "binding", f"({wid},{jid})", "==", split, half))

    for x, wid in enumerate(problem.workers):
        matched = sum(outcome.mu[x])
        if matched > problem.n[x]:
            out.append(Violation(2, "feasibility", f"row {wid}", "<=", matched, problem.n[x]))
        elif outcome.u[x] > 0 and matched != problem.n[x]:
            out.append(Violation(5, "saturation", f"row {wid}", "==", matched, problem.n[x]))
    for y, jid in enumerate(problem.jobs):
        matched = sum(outcome.mu[x][y] for x in range(problem.nx))
        if matched > problem.m[y]:
            out.append(Violation(3, "feasibility", f"column {jid}", "<=", matched, problem.m[y]))
        elif outcome.v[y] > 0 and matched != problem.m[y]:
            out.append(Violation(6, "saturation", f"column {jid}", "==", matched, problem.m[y]))

    out.sort(key=lambda v: (v.condition, v.where))
    return StabilityReport(not out, tuple(out))


def blocking_pairs(problem: LTUProblem, outcome: Outcome):
    """Pairs whose members could profitably leave, worst deficit first.

    Returns ((worker_id, job_id), deficit) tuples with deficit = phi/2 minus
    the pair's current split value, positive only.
    """
    found = []
    for x, wid in enumerate(problem.workers):
        for y, jid in enumerate(problem.jobs):
            lam = problem.lam[x][y]
            split = lam * outcome.u[x] + (ONE - lam) * outcome.v[y]
            deficit = problem.phi[x][y] / 2 - split
            if deficit > 0:
                found.append(((wid, jid), deficit))
    found.sort(key=lambda item: (-item[1], item[0]))
    return tuple(found)


def verify_stable_m2o(problem: ManyToOneProblem, outcome: ArrangementOutcome) -> StabilityReport:
    """Check the arrangement-market conditions; collect every violation."""
    na = len(problem.arrangements)
    nt = len(problem.types)
    if len(outcome.mu) != na or len(outcome.u) != nt:
        bad = Violation(0, "shape", "outcome", "matches",
                        Fraction(len(outcome.mu)), Fraction(na))
        return StabilityReport(False, (bad,))
    out: list[Violation] = []
    for a, arr in enumerate(problem.arrangements):
        if outcome.mu[a] < 0:
            out.append(Violation(0, "sign", f"mu[{_slots(arr)}]", ">=",
                                 outcome.mu[a], ZERO))

    index = {t: i for i, t in enumerate(problem.types)}
    for a, arr in enumerate(problem.arrangements):
        value = sum(
            w * outcome.u[index[slot]]
            for slot, w in zip(arr.slots, arr.lam)
            if slot is not None
        )
        if value < arr.phi:
            out.append(Violation(1, "blocking", _slots(arr), ">=", Fraction(value), arr.phi))
        elif outcome.mu[a] > 0 and value != arr.phi:
            out.append(Violation(4, "binding", _slots(arr), "==", Fraction(value), arr.phi))

    occupancy = problem.occupancy
    for x, tid in enumerate(problem.types):
        used = sum(occupancy[a][x] * outcome.mu[a] for a in range(na))
        if used != problem.n[x]:
            out.append(Violation(2, "feasibility", f"type {tid}", "==",
                                 Fraction(used), problem.n[x]))

    out.sort(key=lambda v: (v.condition, v.where))
    return StabilityReport(not out, tuple(out))


def _slots(arr) -> str:
    return "(" + ",".join("-" if s is None else s for s in arr.slots) + ")"
