"""Exception hierarchy.

Every failure that follows from the mathematical input (as opposed to a
programming mistake) derives from :class:`DomainError`; the command line
maps those to exit status 1.
"""


class DomainError(Exception):
    """Base class for input-dependent failures."""


class UnknownVariable(DomainError, KeyError):
    pass


class NonSquare(DomainError, ValueError):
    pass


class DegeneratePair(DomainError, ValueError):
    pass


class DegenerateStructure(DomainError, ValueError):
    pass


class NoSolution(DomainError, ValueError):
    pass


class VacuousComplex(DomainError, ValueError):
    pass


class ToleranceAmbiguity(DomainError, ArithmeticError):
    pass


class BadParams(DomainError, ValueError):
    pass


class NotProportional(DomainError, ArithmeticError):
    def __init__(self, component, remainder, message=None):
        self.component = component
        self.remainder = remainder
        super().__init__(message or f"component {component} is not a multiple of the equation")


class TypeChange(DomainError, ArithmeticError):
    pass


class Blowup(DomainError, ArithmeticError):
    pass


class CourantViolation(DomainError, ArithmeticError):
    pass


class GridMismatch(DomainError, ValueError):
    pass
