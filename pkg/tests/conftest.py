from fractions import Fraction as F
from pathlib import Path

import pytest

from ltumatch import Arrangement, LTUProblem, ManyToOneProblem, Outcome

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def uneven2x2() -> LTUProblem:
    """Two worker and two job types, unit masses, asymmetric weights.

    Canonical form of the constraints u+2v=2, 2u+v=2, u+v=2, u+v=2
    (coefficients a, b, c with lambda = a/(a+b), phi = 2c/(a+b)).
    """
    return LTUProblem(
        workers=("w1", "w2"),
        jobs=("j1", "j2"),
        n=(F(1), F(1)),
        m=(F(1), F(1)),
        lam=((F(1, 3), F(2, 3)), (F(1, 2), F(1, 2))),
        phi=((F(2, 3), F(2, 3)), (F(1), F(1))),
    )


@pytest.fixture
def black() -> Outcome:
    """Diagonal matching, workers take everything."""
    return Outcome(mu=((F(1), F(0)), (F(0), F(1))), u=(F(1), F(1)), v=(F(0), F(0)))


@pytest.fixture
def white() -> Outcome:
    """Anti-diagonal matching, jobs take everything."""
    return Outcome(mu=((F(0), F(1)), (F(1), F(0))), u=(F(0), F(0)), v=(F(1), F(1)))


@pytest.fixture
def mixed() -> Outcome:
    """White's matching with black's split; not stable."""
    return Outcome(mu=((F(0), F(1)), (F(1), F(0))), u=(F(1), F(1)), v=(F(0), F(0)))


@pytest.fixture
def zero() -> Outcome:
    return Outcome(mu=((F(0), F(0)), (F(0), F(0))), u=(F(0), F(0)), v=(F(0), F(0)))


@pytest.fixture
def roommates() -> ManyToOneProblem:
    """One worker type, firms of two slots: stay single or pair up."""
    return ManyToOneProblem(
        types=("1",),
        n=(F(2),),
        size=2,
        arrangements=(
            Arrangement(("1", None), (F(1), F(0)), F(1, 2)),
            Arrangement(("1", "1"), (F(1, 2), F(1, 2)), F(2)),
        ),
    )


@pytest.fixture
def tu_2x2() -> LTUProblem:
    """A 2x2 problem whose odds factorize: lambda = a_x / (a_x + b_y)
    with a = (1, 2), b = (1, 3)."""
    return LTUProblem(
        workers=("w1", "w2"),
        jobs=("j1", "j2"),
        n=(F(1), F(1)),
        m=(F(1), F(1)),
        lam=((F(1, 2), F(1, 4)), (F(2, 3), F(2, 5))),
        phi=((F(1), F(2)), (F(3), F(4))),
    )
