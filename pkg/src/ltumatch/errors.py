"""Typed errors shared across the package.

Every error the library raises deliberately derives from LTUError. The CLI
maps them onto exit codes: malformed or invalid input exits 2, a negative
verification result exits 1, and a broken internal invariant exits 3.
"""


class LTUError(Exception):
    """Base class for all library errors."""


class FormatError(LTUError):
    """Malformed input: bad JSON shape, bad rational literal, duplicate ids."""


class DimensionMismatch(LTUError):
    """Vector or matrix sizes do not agree with the declared type sets."""


class LambdaOutOfRange(LTUError):
    """A bargaining weight is outside the open interval (0, 1)."""


class NonpositiveMass(LTUError):
    """A type mass is zero or negative."""


class NonpositiveOutput(LTUError):
    """A pair output is zero or negative where the game reduction needs it positive."""


class NonpositiveCoefficient(LTUError):
    """A linear-constraint coefficient is zero or negative."""


class TaxOutOfRange(LTUError):
    """A tax rate is outside [0, 1)."""


class DegenerateOutcome(LTUError):
    """An outcome with zero total matched output or zero total utility cannot be mapped."""


class NotAnEquilibrium(LTUError):
    """A profile handed to the backward map failed the equilibrium check."""

    def __init__(self, deviation):
        self.deviation = deviation
        super().__init__(f"profile is not an equilibrium: {deviation}")


class ZeroValue(LTUError):
    """An equilibrium value of zero reached the backward map (internal guard)."""


class RayTermination(LTUError):
    """Complementary pivoting left the polytope along an unbounded ray."""

    def __init__(self, trace):
        self.trace = tuple(trace)
        super().__init__(f"ray termination after {len(self.trace)} pivots")


class IterationLimit(LTUError):
    """The pivot budget ran out before the path terminated."""


class BudgetExceeded(LTUError):
    """The support-pair enumeration budget would be exceeded."""


class CapExceeded(LTUError):
    """A problem is larger than the oracle's enumeration caps allow."""


class NotTU(LTUError):
    """A rescaling to transferable utility was requested for a non-TU problem."""


class IsTU(LTUError):
    """A non-exchangeability counterexample was requested for a TU problem."""


class EmptyTypeSet(LTUError):
    """A subproblem selected an empty worker or job set."""


class InputNotStable(LTUError):
    """An operation that requires stable inputs received an unstable one."""


class InternalError(LTUError):
    """An internal invariant failed; indicates a bug, not bad input."""
