"""Exact Nash equilibria of (loss, payoff) games.

Two solvers. `lemke_howson` follows the complementary pivoting path from the
artificial origin after dropping one label, on a pair of integer tableaux:
entries stay integers throughout (each pivot divides exactly by the previous
pivot element), and degenerate ties are broken lexicographically so the path
cannot cycle. `enumerate_equilibria` sweeps support pairs and solves each
candidate's indifference system exactly, which finds every equilibrium support
of small games at the cost of exponential work in the larger dimension.

Both return mixed profiles over the game's own row/column order; callers that
need utilities ask `expected_values`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._simplex import LinearSystem, relative_interior_point
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    FormatError,
    InternalError,
    IterationLimit,
    NotAnEquilibrium,
    RayTermination,
)
from .games import BimatrixGame, MixedProfile

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Deviation:
    """A profitable unilateral move: `strategy` beats the current mix."""

    side: str  # "hider" or "seeker"
    strategy: int
    current: Fraction
    better: Fraction


@dataclass(frozen=True)
class EquilibriumReport:
    ok: bool
    hider_loss: Fraction
    seeker_payoff: Fraction
    deviation: Deviation | None


def _check_shape(game: BimatrixGame, profile: MixedProfile) -> None:
    m, n = game.shape
    if len(profile.p) != m or len(profile.q) != n:
        raise DimensionMismatch(
            f"profile is {len(profile.p)}x{len(profile.q)}, game is {m}x{n}"
        )


def expected_values(game: BimatrixGame, profile: MixedProfile) -> tuple[Fraction, Fraction]:
    """(expected hider loss, expected seeker payoff) under the profile."""
    _check_shape(game, profile)
    loss = sum(
        p * sum(l * q for l, q in zip(lrow, profile.q))
        for p, lrow in zip(profile.p, game.loss)
    )
    payoff = sum(
        p * sum(w * q for w, q in zip(prow, profile.q))
        for p, prow in zip(profile.p, game.payoff)
    )
    return Fraction(loss), Fraction(payoff)


def is_equilibrium(game: BimatrixGame, profile: MixedProfile) -> EquilibriumReport:
    """Check both players' pure deviations; report the first profitable one."""
    _check_shape(game, profile)
    row_loss = [sum(l * q for l, q in zip(lrow, profile.q)) for lrow in game.loss]
    col_payoff = [
        sum(game.payoff[i][j] * profile.p[i] for i in range(len(game.rows)))
        for j in range(len(game.cols))
    ]
    loss = sum(p * l for p, l in zip(profile.p, row_loss))
    payoff = sum(w * q for w, q in zip(col_payoff, profile.q))
    for i, l in enumerate(row_loss):
        if l < loss:
            dev = Deviation("hider", i, Fraction(loss), Fraction(l))
            return EquilibriumReport(False, Fraction(loss), Fraction(payoff), dev)
    for j, w in enumerate(col_payoff):
        if w > payoff:
            dev = Deviation("seeker", j, Fraction(payoff), Fraction(w))
            return EquilibriumReport(False, Fraction(loss), Fraction(payoff), dev)
    return EquilibriumReport(True, Fraction(loss), Fraction(payoff), None)


def require_equilibrium(game: BimatrixGame, profile: MixedProfile) -> EquilibriumReport:
    """is_equilibrium, raising on a profitable deviation instead of reporting."""
    report = is_equilibrium(game, profile)
    if not report.ok:
        raise NotAnEquilibrium(report.deviation)
    return report


# ---------------------------------------------------------------------------
# Lemke-Howson with integer tableaux.
#
# The hider's loss becomes a utility by reflection (max loss + 1 minus loss),
# the seeker's payoff is shifted above zero, and both are scaled to integers;
# none of that moves the equilibria. Tableau 1 holds the hider's strategy
# polytope {x >= 0, payoff^T x <= 1} with slacks s_j; tableau 2 holds the
# seeker's {y >= 0, util y <= 1} with slacks r_i. Variable x_i shares a label
# with r_i, y_j with s_j; the algorithm drops one label, then alternates
# tableaux entering the complement of whatever just left until the dropped
# label comes back.

_COMPLEMENT = {"x": "r", "r": "x", "y": "s", "s": "y"}

Var = tuple[str, int]


def _positive_integer_matrices(game: BimatrixGame):
    m, n = game.shape
    top = max(l for row in game.loss for l in row) + 1
    util = [[top - l for l in row] for row in game.loss]
    floor = min(w for row in game.payoff for w in row)
    shift = ONE - min(floor, ZERO)
    gain = [[w + shift for w in row] for row in game.payoff]
    scale_a = math.lcm(*(v.denominator for row in util for v in row))
    scale_b = math.lcm(*(v.denominator for row in gain for v in row))
    a = [[int(v * scale_a) for v in row] for row in util]
    b = [[int(v * scale_b) for v in row] for row in gain]
    return a, b


def _label_of(var: Var, m: int) -> int:
    kind, idx = var
    return idx if kind in ("x", "r") else m + idx


def _lex_less(t, i, k, col, nbasic) -> bool:
    """Ratio row i < ratio row k, comparing (rhs, slack block) lexicographically
    by cross-multiplication; both pivot-column entries are positive."""
    di, dk = t[i][col], t[k][col]
    last = len(t[i]) - 1
    for c in (last, *range(nbasic)):
        lhs = t[i][c] * dk
        rhs = t[k][c] * di
        if lhs != rhs:
            return lhs < rhs
    return i < k


def _lex_leaving(t, col, nbasic):
    best = None
    for i, row in enumerate(t):
        if row[col] > 0 and (best is None or _lex_less(t, i, best, col, nbasic)):
            best = i
    return best


def _int_pivot(t, prev, row, col):
    piv = t[row][col]
    base = t[row]
    for i, r in enumerate(t):
        if i != row:
            f = r[col]
            t[i] = [(v * piv - f * w) // prev for v, w in zip(r, base)]
    return piv


def lemke_howson(game: BimatrixGame, label: int = 0, max_iter: int = 1_000_000) -> MixedProfile:
    """Follow the complementary path for the dropped label; exact throughout."""
    m, n = game.shape
    if not 0 <= label < m + n:
        raise FormatError(f"label must lie in [0, {m + n}), got {label}")
    a, b = _positive_integer_matrices(game)

    # tableau 1: rows j in [0, n); columns s_0..s_{n-1}, x_0..x_{m-1}, rhs
    t1 = [[1 if c == j else 0 for c in range(n)] + [b[i][j] for i in range(m)] + [1]
          for j in range(n)]
    basis1: list[Var] = [("s", j) for j in range(n)]
    # tableau 2: rows i in [0, m); columns r_0..r_{m-1}, y_0..y_{n-1}, rhs
    t2 = [[1 if c == i else 0 for c in range(m)] + list(a[i]) + [1] for i in range(m)]
    basis2: list[Var] = [("r", i) for i in range(m)]
    prev = [1, 1]

    entering: Var = ("x", label) if label < m else ("y", label - m)
    trace = [entering]
    for _ in range(max_iter):
        in_first = entering[0] in ("s", "x")
        if in_first:
            t, basis, nbasic, side = t1, basis1, n, 0
            col = entering[1] if entering[0] == "s" else n + entering[1]
        else:
            t, basis, nbasic, side = t2, basis2, m, 1
            col = entering[1] if entering[0] == "r" else m + entering[1]
        row = _lex_leaving(t, col, nbasic)
        if row is None:
            raise RayTermination(tuple(trace))
        leaving = basis[row]
        prev[side] = _int_pivot(t, prev[side], row, col)
        basis[row] = entering
        if _label_of(leaving, m) == label:
            break
        entering = (_COMPLEMENT[leaving[0]], leaving[1])
        trace.append(entering)
    else:
        raise IterationLimit(f"no equilibrium within {max_iter} pivots")

    x = [ZERO] * m
    for j, var in enumerate(basis1):
        if var[0] == "x":
            x[var[1]] = Fraction(t1[j][-1], prev[0])
    y = [ZERO] * n
    for i, var in enumerate(basis2):
        if var[0] == "y":
            y[var[1]] = Fraction(t2[i][-1], prev[1])
    sx, sy = sum(x), sum(y)
    if sx == 0 or sy == 0:
        raise InternalError("pivoting ended at the artificial origin")
    profile = MixedProfile(tuple(v / sx for v in x), tuple(v / sy for v in y))
    report = is_equilibrium(game, profile)
    if not report.ok:
        raise InternalError(f"pivoting returned a non-equilibrium: {report.deviation}")
    return profile


# ---------------------------------------------------------------------------
# Support enumeration.


def _masks(size: int):
    for mask in range(1, 1 << size):
        yield tuple(i for i in range(size) if mask >> i & 1)


def enumerate_equilibria(game: BimatrixGame, budget: int = 1_000_000) -> tuple[MixedProfile, ...]:
    """Every equilibrium support pair of a small game, one profile each.

    For each pair of candidate supports the two indifference systems are
    independent: the seeker's mix must equalize hider losses on the hider's
    support (and not undercut them off it), and vice versa. Any jointly
    feasible pair is an equilibrium, so representatives need no filtering;
    each side's point is pushed into the relative interior of its support so
    maximal-support solutions are preferred. Profiles are deduplicated and
    ordered by support then weights.
    """
    m, n = game.shape
    total = ((1 << m) - 1) * ((1 << n) - 1)
    if total > budget:
        raise BudgetExceeded(f"{total} support pairs exceed the budget of {budget}")

    found: dict[tuple, MixedProfile] = {}
    for s1 in _masks(m):
        for s2 in _masks(n):
            # seeker weights q over s2, plus the hider's common loss level
            nq = len(s2)
            eqs = [(tuple([ONE] * nq + [ZERO]), ONE)]
            for i in s1:
                eqs.append((tuple([game.loss[i][j] for j in s2] + [-ONE]), ZERO))
            ineqs = []
            for i in range(m):
                if i not in s1:
                    ineqs.append((tuple([-game.loss[i][j] for j in s2] + [ONE]), ZERO))
            qsys = LinearSystem(nq + 1, tuple([True] * nq + [False]),
                                tuple(eqs), tuple(ineqs))
            qpt = relative_interior_point(qsys, tuple(range(nq)))
            if qpt is None:
                continue

            # hider weights p over s1, plus the seeker's common payoff level
            npv = len(s1)
            eqs = [(tuple([ONE] * npv + [ZERO]), ONE)]
            for j in s2:
                eqs.append((tuple([game.payoff[i][j] for i in s1] + [-ONE]), ZERO))
            ineqs = []
            for j in range(n):
                if j not in s2:
                    ineqs.append((tuple([game.payoff[i][j] for i in s1] + [-ONE]), ZERO))
            psys = LinearSystem(npv + 1, tuple([True] * npv + [False]),
                                tuple(eqs), tuple(ineqs))
            ppt = relative_interior_point(psys, tuple(range(npv)))
            if ppt is None:
                continue

            p = [ZERO] * m
            for pos, i in enumerate(s1):
                p[i] = ppt[pos]
            q = [ZERO] * n
            for pos, j in enumerate(s2):
                q[j] = qpt[pos]
            profile = MixedProfile(tuple(p), tuple(q))
            report = is_equilibrium(game, profile)
            if not report.ok:
                raise InternalError(
                    f"support pair {s1}/{s2} produced a non-equilibrium: {report.deviation}"
                )
            found.setdefault((profile.p, profile.q), profile)

    ordered = sorted(
        found.values(),
        key=lambda pr: (pr.p_support, pr.q_support, pr.p, pr.q),
    )
    return tuple(ordered)
