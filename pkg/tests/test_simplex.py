from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ltumatch import InternalError
from ltumatch._simplex import (
    Certificate,
    LinearSystem,
    certificate_refutes,
    equations_consistent,
    maximize,
    relative_interior_point,
    satisfies,
    solve,
)


def _sys(nvars, nonneg, eqs=(), ineqs=()):
    return LinearSystem(nvars=nvars, nonneg=nonneg, eqs=tuple(eqs), ineqs=tuple(ineqs))


def test_feasible_equality():
    system = _sys(2, (True, True), eqs=[((F(1), F(1)), F(1))])
    res = solve(system)
    assert res.feasible
    assert satisfies(system, res.point)


def test_infeasible_negative_rhs():
    system = _sys(2, (True, True), eqs=[((F(1), F(1)), F(-1))])
    res = solve(system)
    assert not res.feasible
    assert certificate_refutes(system, res.certificate)


def test_infeasible_by_inequalities():
    # x <= -1 with x >= 0
    system = _sys(1, (True,), ineqs=[((F(1),), F(-1))])
    res = solve(system)
    assert not res.feasible
    assert certificate_refutes(system, res.certificate)


def test_infeasible_inconsistent_equalities():
    # x + y = 1 and x + y = 2 with free variables
    system = _sys(
        2,
        (False, False),
        eqs=[((F(1), F(1)), F(1)), ((F(1), F(1)), F(2))],
    )
    res = solve(system)
    assert not res.feasible
    assert certificate_refutes(system, res.certificate)


def test_infeasible_between_ineqs():
    # x >= 2 (as -x <= -2) and x <= 1
    system = _sys(
        1,
        (False,),
        ineqs=[((F(-1),), F(-2)), ((F(1),), F(1))],
    )
    res = solve(system)
    assert not res.feasible
    assert certificate_refutes(system, res.certificate)


def test_free_variable_can_go_negative():
    system = _sys(1, (False,), eqs=[((F(2),), F(-3))])
    res = solve(system)
    assert res.feasible
    assert res.point == (F(-3, 2),)


def test_certificate_refutes_rejects_wrong_shapes():
    system = _sys(1, (True,), ineqs=[((F(1),), F(-1))])
    assert not certificate_refutes(system, Certificate((), ()))
    # a sign-violating multiplier is rejected even if the algebra works out
    assert not certificate_refutes(system, Certificate((), (F(-1),)))
    # the zero combination proves nothing
    assert not certificate_refutes(system, Certificate((), (F(0),)))


def test_equations_consistent():
    assert equations_consistent([((F(1), F(1)), F(1))], 2)
    assert not equations_consistent(
        [((F(1), F(1)), F(1)), ((F(2), F(2)), F(3))], 2
    )


def test_maximize_bounded():
    system = _sys(1, (True,), ineqs=[((F(1),), F(5))])
    value, point = maximize(system, (F(1),))
    assert value == F(5)
    assert point == (F(5),)


def test_maximize_infeasible_returns_none():
    system = _sys(1, (True,), ineqs=[((F(1),), F(-1))])
    assert maximize(system, (F(1),)) is None


def test_maximize_unbounded_raises():
    system = _sys(1, (True,), ineqs=())
    with pytest.raises(InternalError):
        maximize(system, (F(1),))


def test_relative_interior_lifts_zero_coords():
    # the triangle x + y <= 1; both coordinates admit positive values
    system = _sys(2, (True, True), ineqs=[((F(1), F(1)), F(1))])
    point = relative_interior_point(system, (0, 1))
    assert point is not None
    assert satisfies(system, point)
    assert point[0] > 0 and point[1] > 0


def test_relative_interior_respects_forced_zero():
    # x pinned at zero by an equality; y still lifts
    system = _sys(
        2,
        (True, True),
        eqs=[((F(1), F(0)), F(0))],
        ineqs=[((F(0), F(1)), F(1))],
    )
    point = relative_interior_point(system, (0, 1))
    assert point is not None
    assert point[0] == 0
    assert point[1] > 0


coeff = st.integers(min_value=-4, max_value=4).map(F)
row3 = st.tuples(coeff, coeff, coeff)


@settings(max_examples=300, deadline=None)
@given(
    eqs=st.lists(st.tuples(row3, coeff), max_size=3),
    ineqs=st.lists(st.tuples(row3, coeff), max_size=3),
    nonneg=st.tuples(st.booleans(), st.booleans(), st.booleans()),
)
def test_solver_is_sound_either_way(eqs, ineqs, nonneg):
    """Every answer is checkable: a point satisfies the system, a certificate
    refutes it. One of the two always comes back."""
    system = _sys(3, nonneg, eqs=eqs, ineqs=ineqs)
    res = solve(system)
    if res.feasible:
        assert satisfies(system, res.point)
    else:
        assert certificate_refutes(system, res.certificate)
