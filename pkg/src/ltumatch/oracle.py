"""Brute-force stable-outcome search by complementarity pattern.

Stability is piecewise linear: once you fix which pairs are allowed to match
(and must therefore split exactly), which worker types earn (and must be
saturated), and which job types earn, everything left is two independent
linear feasibility problems. One ranges over the splits (u, v): binding
equalities on the chosen cells, no-blocking inequalities elsewhere, zeros off
the chosen type sets. The other ranges over the matching mu: zeros off the
chosen cells, saturation equalities on earning types, capacity bounds on the
rest. Any point feasible for both halves is a stable outcome, and every
stable outcome is feasible for the pattern it induces, so sweeping all
patterns finds a representative of every stability region.

This is exponential in the number of cells and exists to cross-check the
game-theoretic pipeline on small instances, not to be fast. Caps guard
against accidental monsters.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._simplex import (
    Certificate,
    LinearSystem,
    certificate_refutes,
    equations_consistent,
    solve,
)
from .errors import CapExceeded, InternalError
from .model import LTUProblem, Outcome
from .stability import verify_stable

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ComplementarityPattern:
    """Index sets: cells that may match, worker types and job types that earn."""

    cells: tuple[tuple[int, int], ...]
    pos_u: tuple[int, ...]
    pos_v: tuple[int, ...]


@dataclass(frozen=True)
class OracleCaps:
    max_cells: int = 9
    max_types: int = 8
    pattern_budget: int = 2_000_000


@dataclass(frozen=True)
class PatternResult:
    """Either a stable outcome or the Farkas refutation of whichever half
    failed first (splits before matching)."""

    outcome: Outcome | None
    split_certificate: Certificate | None
    matching_certificate: Certificate | None


def induced_pattern(problem: LTUProblem, outcome: Outcome) -> ComplementarityPattern:
    cells = tuple(
        (x, y)
        for x in range(problem.nx)
        for y in range(problem.ny)
        if outcome.mu[x][y] > 0
    )
    pos_u = tuple(x for x in range(problem.nx) if outcome.u[x] > 0)
    pos_v = tuple(y for y in range(problem.ny) if outcome.v[y] > 0)
    return ComplementarityPattern(cells, pos_u, pos_v)


def _split_system(problem: LTUProblem, pattern: ComplementarityPattern) -> LinearSystem:
    nx, ny = problem.nx, problem.ny
    width = nx + ny
    cellset = set(pattern.cells)
    eqs = []
    ineqs = []
    for x in range(nx):
        for y in range(ny):
            row = [ZERO] * width
            lam = problem.lam[x][y]
            row[x] = lam
            row[nx + y] = ONE - lam
            half = problem.phi[x][y] / 2
            if (x, y) in cellset:
                eqs.append((tuple(row), half))
            else:
                ineqs.append((tuple(-c for c in row), -half))
    for x in range(nx):
        if x not in pattern.pos_u:
            row = [ZERO] * width
            row[x] = ONE
            eqs.append((tuple(row), ZERO))
    for y in range(ny):
        if y not in pattern.pos_v:
            row = [ZERO] * width
            row[nx + y] = ONE
            eqs.append((tuple(row), ZERO))
    return LinearSystem(width, (True,) * width, tuple(eqs), tuple(ineqs))


def _matching_system(problem: LTUProblem, pattern: ComplementarityPattern) -> LinearSystem:
    nx, ny = problem.nx, problem.ny
    width = nx * ny
    cellset = set(pattern.cells)
    eqs = []
    ineqs = []
    for x in range(nx):
        for y in range(ny):
            if (x, y) not in cellset:
                row = [ZERO] * width
                row[x * ny + y] = ONE
                eqs.append((tuple(row), ZERO))
    for x in range(nx):
        row = [ZERO] * width
        for y in range(ny):
            row[x * ny + y] = ONE
        if x in pattern.pos_u:
            eqs.append((tuple(row), problem.n[x]))
        else:
            ineqs.append((tuple(row), problem.n[x]))
    for y in range(ny):
        row = [ZERO] * width
        for x in range(nx):
            row[x * ny + y] = ONE
        if y in pattern.pos_v:
            eqs.append((tuple(row), problem.m[y]))
        else:
            ineqs.append((tuple(row), problem.m[y]))
    return LinearSystem(width, (True,) * width, tuple(eqs), tuple(ineqs))


def linear_feasibility(problem: LTUProblem, pattern: ComplementarityPattern) -> PatternResult:
    """Solve the two halves of a pattern; certify whichever is empty."""
    split_system = _split_system(problem, pattern)
    split = solve(split_system)
    if split.point is None:
        if not certificate_refutes(split_system, split.certificate):
            raise InternalError("invalid refutation for the split system")
        return PatternResult(None, split.certificate, None)
    matching_system = _matching_system(problem, pattern)
    matching = solve(matching_system)
    if matching.point is None:
        if not certificate_refutes(matching_system, matching.certificate):
            raise InternalError("invalid refutation for the matching system")
        return PatternResult(None, None, matching.certificate)
    nx, ny = problem.nx, problem.ny
    mu = tuple(
        tuple(matching.point[x * ny + y] for y in range(ny)) for x in range(nx)
    )
    u = tuple(split.point[:nx])
    v = tuple(split.point[nx:])
    outcome = Outcome(mu, u, v)
    report = verify_stable(problem, outcome)
    if not report.ok:
        raise InternalError(
            f"pattern produced an unstable outcome: {report.violations[0].describe()}"
        )
    return PatternResult(outcome, None, None)


def enumerate_stable(problem: LTUProblem, caps: OracleCaps = OracleCaps()) -> tuple[Outcome, ...]:
    """One stable outcome per feasible pattern, deduplicated and sorted.

    Patterns are pruned before the linear algebra where infeasibility is
    syntactic: a cell with negative output can never bind, an earning type
    needs a matchable cell in its line, a binding cell with positive output
    needs someone at the table earning, and binding equalities that are
    already inconsistent on their own kill the whole cell set.
    """
    nx, ny = problem.nx, problem.ny
    ncells = nx * ny
    if ncells > caps.max_cells or nx + ny > caps.max_types:
        raise CapExceeded(
            f"{nx}x{ny} needs {ncells} cells and {nx + ny} types; "
            f"caps are {caps.max_cells} and {caps.max_types}"
        )
    total = (1 << ncells) * (1 << nx) * (1 << ny)
    if total > caps.pattern_budget:
        raise CapExceeded(f"{total} patterns exceed the budget of {caps.pattern_budget}")

    cells = [(x, y) for x in range(nx) for y in range(ny)]
    width = nx + ny
    found: dict[tuple, Outcome] = {}

    for smask in range(1 << ncells):
        scells = tuple(cells[i] for i in range(ncells) if smask >> i & 1)
        if any(problem.phi[x][y] < 0 for x, y in scells):
            continue
        eqs = []
        for x, y in scells:
            row = [ZERO] * width
            row[x] = problem.lam[x][y]
            row[nx + y] = ONE - problem.lam[x][y]
            eqs.append((tuple(row), problem.phi[x][y] / 2))
        if eqs and not equations_consistent(tuple(eqs), width):
            continue
        srows = 0
        scols = 0
        for x, y in scells:
            srows |= 1 << x
            scols |= 1 << y
        for pumask in range(1 << nx):
            if pumask & ~srows:
                continue
            for pvmask in range(1 << ny):
                if pvmask & ~scols:
                    continue
                if any(
                    not (pumask >> x & 1) and not (pvmask >> y & 1)
                    and problem.phi[x][y] != 0
                    for x, y in scells
                ):
                    continue
                pattern = ComplementarityPattern(
                    scells,
                    tuple(x for x in range(nx) if pumask >> x & 1),
                    tuple(y for y in range(ny) if pvmask >> y & 1),
                )
                result = linear_feasibility(problem, pattern)
                if result.outcome is not None:
                    key = (result.outcome.mu, result.outcome.u, result.outcome.v)
                    found.setdefault(key, result.outcome)

    return tuple(found[key] for key in sorted(found))
