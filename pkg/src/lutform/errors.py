"""Exception hierarchy shared by all lutform modules."""


class LutformError(Exception):
    """Base class for every error raised by lutform."""


class DomainError(LutformError, ValueError):
    """A model parameter lies outside the critical (Luttinger) regime."""


class InvalidStateError(LutformError, ValueError):
    """A particle-hole configuration violates one of its invariants."""


class DegenerateInputError(LutformError, ValueError):
    """A Cauchy matrix has a vanishing denominator (p_i == q_j)."""


class EnumerationCapError(LutformError, RuntimeError):
    """The requested momentum sector holds more states than the cap allows."""


class UnsupportedOperatorError(LutformError, ValueError):
    pass


class SingularityError(LutformError, ZeroDivisionError):
    """A closed-form correlator was evaluated at its branch point."""


class ConvergenceError(LutformError, ArithmeticError):
    """Quadrature failed to reach the requested tolerance."""


class MissingPrefactorError(LutformError, KeyError):
    pass


class InconsistentPrefactorError(LutformError, ValueError):
    """A prefactor sign yields a negative squared formfactor."""
