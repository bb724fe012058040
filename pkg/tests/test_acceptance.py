"""End-to-end acceptance checks, one criterion per test.

Each test prints a single PASS or FAIL line through capsys.disabled() so a
plain pytest run doubles as a checklist, then asserts so the suite stays
honest. Frozen numbers come from the worked 2x2 instance (see conftest) and
the roommate instance; everything else is drawn from seeded generators and
checked against independent definitions, never against the code under test.
"""
import time
from fractions import Fraction as F
from itertools import combinations
from random import Random

import pytest

from ltumatch import (
    Arrangement,
    FuzzConfig,
    LTUProblem,
    ManyToOneProblem,
    MixedProfile,
    enumerate_equilibria,
    enumerate_stable,
    equilibrium_to_outcome,
    expected_values,
    build_counterexample,
    exchange_test,
    is_equilibrium,
    lemke_howson,
    normalize_outputs,
    outcome_to_equilibrium,
    random_problem,
    random_tu_problem,
    rescale_to_tu,
    solve_stable,
    solve_stable_m2o,
    to_game,
    verify_stable,
    verify_stable_m2o,
)

UNEVEN = LTUProblem(
    workers=("w1", "w2"),
    jobs=("j1", "j2"),
    n=(F(1), F(1)),
    m=(F(1), F(1)),
    lam=((F(1, 3), F(2, 3)), (F(1, 2), F(1, 2))),
    phi=((F(2, 3), F(2, 3)), (F(1), F(1))),
)
BLACK = ((F(1), F(0)), (F(0), F(1))), (F(1), F(1)), (F(0), F(0))
WHITE = ((F(0), F(1)), (F(1), F(0))), (F(0), F(0)), (F(1), F(1))

UNEVEN_LOSS = (
    (F(1, 2), F(0), F(1), F(0)),
    (F(1), F(0), F(0), F(1, 2)),
    (F(0), F(1, 2), F(1, 2), F(0)),
    (F(0), F(1, 2), F(0), F(1, 2)),
)
UNEVEN_PAYOFF = (
    (F(3, 4), F(0), F(3, 4), F(0)),
    (F(3, 4), F(0), F(0), F(3, 4)),
    (F(0), F(1, 2), F(1, 2), F(0)),
    (F(0), F(1, 2), F(0), F(1, 2)),
)
BLACK_PROFILE = MixedProfile(
    (F(2, 5), F(0), F(0), F(3, 5)), (F(1, 2), F(1, 2), F(0), F(0))
)
WHITE_PROFILE = MixedProfile(
    (F(0), F(2, 5), F(3, 5), F(0)), (F(0), F(0), F(1, 2), F(1, 2))
)


def _report(capsys, line: str) -> None:
    with capsys.disabled():
        print(line)


def _split_total(problem, outcome):
    return sum(n * u for n, u in zip(problem.n, outcome.u)) + sum(
        m * v for m, v in zip(problem.m, outcome.v)
    )


def _matched_output(problem, outcome):
    return sum(
        problem.phi[x][y] * outcome.mu[x][y]
        for x in range(problem.nx)
        for y in range(problem.ny)
    )


@pytest.fixture(scope="module")
def analyzed():
    """Shared corpus for AC3-AC5: the worked example, forty instances of at
    most 2x2, and six 2x3 instances, each with its game, every equilibrium,
    and every brute-force stable outcome."""
    rng = Random(7)
    tiny = FuzzConfig(max_workers=2, max_jobs=2)
    wide = FuzzConfig(max_workers=2, max_jobs=3)
    problems = [UNEVEN]
    problems += [random_problem(rng, tiny) for _ in range(40)]
    problems += [
        random_problem(rng, wide, min_workers=2, min_jobs=3) for _ in range(6)
    ]
    rows = []
    for problem in problems:
        game = to_game(problem)
        rows.append(
            (problem, game, enumerate_equilibria(game), enumerate_stable(problem))
        )
    return tuple(rows)


def test_ac1_worked_example(capsys):
    from ltumatch import Outcome

    start = time.perf_counter()
    black, white = Outcome(*BLACK), Outcome(*WHITE)
    wrong = []

    game = to_game(UNEVEN)
    if game.rows != (("w1", "j1"), ("w1", "j2"), ("w2", "j1"), ("w2", "j2")):
        wrong.append("row labels")
    if game.cols != (("x", "w1"), ("x", "w2"), ("y", "j1"), ("y", "j2")):
        wrong.append("column labels")
    if game.loss != UNEVEN_LOSS:
        wrong.append("loss matrix")
    if game.payoff != UNEVEN_PAYOFF:
        wrong.append("payoff matrix")

    for name, outcome, profile in (
        ("black", black, BLACK_PROFILE),
        ("white", white, WHITE_PROFILE),
    ):
        if not verify_stable(UNEVEN, outcome).ok:
            wrong.append(f"{name} stability")
        if outcome_to_equilibrium(UNEVEN, outcome) != profile:
            wrong.append(f"{name} forward map")
        if equilibrium_to_outcome(UNEVEN, profile) != outcome:
            wrong.append(f"{name} backward map")
        if expected_values(game, profile) != (F(1, 4), F(3, 10)):
            wrong.append(f"{name} values")

    solved, _ = solve_stable(UNEVEN)
    if solved != white:
        wrong.append("pivot solver result")
    elapsed = time.perf_counter() - start

    ok = not wrong and elapsed < 1.0
    detail = "game, splits, maps, values and solver match the worked instance"
    if wrong:
        detail = "mismatch in " + ", ".join(wrong)
    _report(capsys, f"AC1 {'PASS' if ok else 'FAIL'}: {detail} ({elapsed:.2f}s)")
    assert ok, wrong


def test_ac2_thousand_exact_round_trips(capsys):
    rng = Random(11)
    broken = 0
    for _ in range(1000):
        problem = random_problem(rng)
        outcome, profile = solve_stable(problem)
        forward = outcome_to_equilibrium(problem, outcome)
        if forward != profile or equilibrium_to_outcome(problem, forward) != outcome:
            broken += 1
    ok = broken == 0
    detail = (
        "both maps invert each other exactly on 1000 random instances"
        if ok
        else f"{broken} of 1000 instances broke the round trip"
    )
    _report(capsys, f"AC2 {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok


def test_ac3_equilibria_are_stable_outcomes(analyzed, capsys):
    wrong = []
    forward = backward = 0
    for problem, game, equilibria, stable in analyzed:
        for profile in equilibria:
            forward += 1
            report = verify_stable(problem, equilibrium_to_outcome(problem, profile))
            if not report.ok:
                wrong.append(f"equilibrium mapped to: {report.violations[0].describe()}")
        for outcome in stable:
            backward += 1
            if not is_equilibrium(game, outcome_to_equilibrium(problem, outcome)).ok:
                wrong.append("stable outcome mapped to a non-equilibrium")
    ok = not wrong
    detail = (
        f"{forward} equilibria all map to stable outcomes and "
        f"{backward} brute-force outcomes all map to equilibria"
        if ok
        else "; ".join(wrong[:3])
    )
    _report(capsys, f"AC3 {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, wrong


def test_ac4_equilibrium_value_identities(analyzed, capsys):
    broken = 0
    checked = 0
    for problem, game, equilibria, _ in analyzed:
        for profile in equilibria:
            checked += 1
            hider_loss, seeker_payoff = expected_values(game, profile)
            outcome = equilibrium_to_outcome(problem, profile)
            if 2 * hider_loss * _split_total(problem, outcome) != 1:
                broken += 1
            elif 2 * seeker_payoff * _matched_output(problem, outcome) != 1:
                broken += 1
    ok = broken == 0
    detail = (
        f"2*loss*(n.u + m.v) = 1 and 2*payoff*sum(phi mu) = 1 "
        f"at all {checked} equilibria"
        if ok
        else f"{broken} of {checked} equilibria broke a value identity"
    )
    _report(capsys, f"AC4 {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok


def test_ac5_pivoting_succeeds_everywhere(analyzed, capsys):
    failures = 0
    runs = 0
    for _, game, _, _ in analyzed:
        for label in range(sum(game.shape)):
            runs += 1
            try:
                profile = lemke_howson(game, label=label)
            except Exception:
                failures += 1
                continue
            if not is_equilibrium(game, profile).ok:
                failures += 1
    ok = failures == 0
    detail = (
        f"the pivot solver returned a checked equilibrium in all {runs} runs"
        if ok
        else f"{failures} of {runs} pivot runs failed"
    )
    _report(capsys, f"AC5 {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok


def test_ac6_equal_split_coefficients_collapse(capsys):
    """With equal splits and unit masses the two loss coefficients and the
    two payoff coefficients all equal 1/(2 phi), cell by cell."""
    rng = Random(23)
    wrong = []
    cells = 0

    problems = []
    for _ in range(25):
        nx, ny = rng.randint(1, 3), rng.randint(1, 3)
        phi = tuple(
            tuple(F(rng.randint(1, 10), rng.randint(1, 6)) for _ in range(ny))
            for _ in range(nx)
        )
        problems.append(
            LTUProblem(
                workers=tuple(f"w{i+1}" for i in range(nx)),
                jobs=tuple(f"j{i+1}" for i in range(ny)),
                n=(F(1),) * nx,
                m=(F(1),) * ny,
                lam=tuple(tuple(F(1, 2) for _ in range(ny)) for _ in range(nx)),
                phi=phi,
            )
        )
    problems.append(
        LTUProblem(("w1",), ("j1",), (F(1),), (F(1),), ((F(1, 2),),), ((F(2),),))
    )

    for problem in problems:
        game = to_game(problem)
        for r, (wid, jid) in enumerate(game.rows):
            cells += 1
            x, y = problem.worker_index(wid), problem.job_index(jid)
            want = 1 / (2 * problem.phi[x][y])
            xcol = game.cols.index(("x", wid))
            ycol = game.cols.index(("y", jid))
            four = (
                game.loss[r][xcol],
                game.loss[r][ycol],
                game.payoff[r][xcol],
                game.payoff[r][ycol],
            )
            if any(value != want for value in four):
                wrong.append(f"cell ({wid},{jid}): {four} != {want}")
            for c in range(len(game.cols)):
                if c in (xcol, ycol):
                    continue
                if game.loss[r][c] != 0 or game.payoff[r][c] != 0:
                    wrong.append(f"cell ({wid},{jid}): stray mass in column {c}")

    one_by_one = to_game(problems[-1])
    if not (
        one_by_one.loss == ((F(1, 4), F(1, 4)),)
        and one_by_one.payoff == ((F(1, 4), F(1, 4)),)
    ):
        wrong.append("1x1 with output 2 should put 1/4 everywhere")

    ok = not wrong
    detail = (
        f"all four coefficient families equal 1/(2 phi) across {cells} cells"
        if ok
        else wrong[0]
    )
    _report(capsys, f"AC6 {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, wrong


def test_ac7_factorizable_means_exchangeable(capsys):
    rng = Random(31)
    cfg = FuzzConfig(max_workers=2, max_jobs=2)
    wrong = []
    pairs = 0

    problems = [random_tu_problem(rng, cfg) for _ in range(8)]
    ones = (F(1), F(1))
    problems.append(
        LTUProblem(
            workers=("w1", "w2"),
            jobs=("j1", "j2"),
            n=ones,
            m=ones,
            lam=((F(1, 2), F(1, 4)), (F(2, 3), F(2, 5))),
            phi=((F(1), F(2)), (F(3), F(4))),
        )
    )
    # every cell identical, so whole families of splits and matchings are
    # stable and the oracle returns many representatives to pair up
    problems.append(
        LTUProblem(
            workers=("w1", "w2"),
            jobs=("j1", "j2"),
            n=ones,
            m=ones,
            lam=((F(1, 2),) * 2,) * 2,
            phi=((F(1),) * 2,) * 2,
        )
    )

    for problem in problems:
        stable = enumerate_stable(problem)
        rescaling = rescale_to_tu(problem)
        totals = {_matched_output(rescaling.problem, o) for o in stable}
        if len(totals) > 1:
            wrong.append(f"rescaled matched output not constant: {sorted(totals)}")
        for first, second in combinations(stable, 2):
            pairs += 1
            if not exchange_test(problem, first, second).ok:
                wrong.append("a pair of stable outcomes failed to exchange")

    built = build_counterexample(UNEVEN)
    if built.rho != 4:
        wrong.append(f"counterexample cross ratio {built.rho} != 4")
    if not verify_stable(built.subproblem, built.black).ok:
        wrong.append("counterexample black outcome unstable")
    if not verify_stable(built.subproblem, built.white).ok:
        wrong.append("counterexample white outcome unstable")
    if built.white_matching_black_split.ok or built.black_matching_white_split.ok:
        wrong.append("counterexample crosses did not both fail")

    ok = not wrong
    detail = (
        f"{pairs} stable pairs on factorizable instances exchange with constant "
        f"rescaled output, and the non-factorizable instance yields a "
        f"certified non-exchangeable pair"
        if ok
        else wrong[0]
    )
    _report(capsys, f"AC7 {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, wrong


def test_ac8_roommates_and_shift_invariance(roommates, capsys):
    wrong = []

    outcome, _ = solve_stable_m2o(roommates)
    if outcome.mu != (F(0), F(1)) or outcome.u != (F(2),):
        wrong.append(f"roommate solution {outcome} is not pair-up at utility 2")
    if not verify_stable_m2o(roommates, outcome).ok:
        wrong.append("roommate solution not stable")
    if normalize_outputs(roommates)[1] != F(1, 2):
        wrong.append("normalization shift is not 1/2")

    bump = F(7, 3)
    shifted = ManyToOneProblem(
        types=roommates.types,
        n=roommates.n,
        size=roommates.size,
        arrangements=tuple(
            Arrangement(a.slots, a.lam, a.phi + bump) for a in roommates.arrangements
        ),
    )
    moved, _ = solve_stable_m2o(shifted)
    if moved.mu != outcome.mu:
        wrong.append("bumping every output changed the matching")
    if moved.u != (F(2) + bump,):
        wrong.append(f"utility should move up by exactly {bump}, got {moved.u}")
    if not verify_stable_m2o(shifted, moved).ok:
        wrong.append("shifted solution not stable")

    ok = not wrong
    detail = (
        "roommates pair up at utility 2 and a uniform output bump moves "
        "utilities by exactly that amount"
        if ok
        else wrong[0]
    )
    _report(capsys, f"AC8 {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, wrong


def test_ac9_performance_budgets(capsys):
    wrong = []

    rng = Random(42)
    big = random_problem(
        rng, FuzzConfig(max_workers=10, max_jobs=10), min_workers=10, min_jobs=10
    )
    start = time.perf_counter()
    outcome, _ = solve_stable(big)
    pivot_time = time.perf_counter() - start
    if not verify_stable(big, outcome).ok:
        wrong.append("10x10 pivot solution not stable")
    if pivot_time >= 1.0:
        wrong.append(f"pivot solve took {pivot_time:.2f}s, budget 1s")

    rng = Random(5)
    mid = random_problem(
        rng, FuzzConfig(max_workers=3, max_jobs=3), min_workers=3, min_jobs=3
    )
    start = time.perf_counter()
    stable = enumerate_stable(mid)
    oracle_time = time.perf_counter() - start
    if not stable:
        wrong.append("3x3 brute force found nothing")
    if any(not verify_stable(mid, o).ok for o in stable):
        wrong.append("3x3 brute force returned an unstable outcome")
    if oracle_time >= 60.0:
        wrong.append(f"brute force took {oracle_time:.1f}s, budget 60s")

    ok = not wrong
    detail = (
        f"10x10 pivot solve in {pivot_time:.2f}s (budget 1s), "
        f"3x3 brute force in {oracle_time:.1f}s (budget 60s)"
        if ok
        else wrong[0]
    )
    _report(capsys, f"AC9 {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, wrong
