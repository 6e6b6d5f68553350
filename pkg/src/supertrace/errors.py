"""Domain errors raised by the engine.

Every condition a caller can trip by violating an operation contract gets
its own class so callers and tests can match on the exact failure.
"""


class SupertraceError(Exception):
    """Base class for all errors raised by this package."""


class NotInvertible(SupertraceError):
    """Series inversion attempted on a series with zero leading coefficient."""


class OutsideUpperHalfPlane(SupertraceError):
    """Numeric evaluation requested at a point with Im(tau) <= 0."""


class InvalidFactor(SupertraceError):
    """Product factor or eta-quotient scale with a nonpositive exponent."""


class InvalidWeight(SupertraceError):
    """Eisenstein weight outside the defined range (odd, or too small)."""


class NotAbsolutelyConvergent(SupertraceError):
    """Lattice sum requested at weight 2 where it does not converge absolutely."""


class UndefinedAtTrivialPair(SupertraceError):
    """Twisted Eisenstein series of positive weight at the trivial pair (1, 1)."""


class WindowTooSmall(SupertraceError):
    """Windowed two-variable expansion too narrow for the requested order."""


class OutsideConvergenceRegion(SupertraceError):
    """Two-variable evaluation outside the region |q_tau| < |q_z| < 1."""


class InvalidDimension(SupertraceError):
    """Fermion count not even, or too small for the requested construction."""


class UnknownAutomorphism(SupertraceError):
    """A generator is missing an eigenvalue for the requested automorphism."""


class BudgetExceeded(SupertraceError):
    """Basis enumeration would visit more states than the configured budget."""


class UnsupportedPair(SupertraceError):
    """Twist pair outside the seven concretely realized cases."""


class DegenerateSample(SupertraceError):
    """Transformation-law denominator vanishes at a sample point."""
