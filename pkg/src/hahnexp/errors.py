"""Exception types shared across the package."""


class HahnExpError(Exception):
    """Base class for all errors raised by hahnexp."""


class DivisionByZero(HahnExpError, ZeroDivisionError):
    pass


class UndecidedSign(HahnExpError, ArithmeticError):
    """A symbolic quantity could not be separated from zero at the refinement cap."""

    def __init__(self, message, precision_reached=None):
        super().__init__(message)
        self.precision_reached = precision_reached


class NotRepresentable(HahnExpError, ValueError):
    pass


class NonPositiveRadicand(HahnExpError, ValueError):
    pass


class EmptyInterval(HahnExpError, ValueError):
    pass


class ConstraintUnsatisfiable(HahnExpError):
    """No admissible image exists in the interval forced by the pinned pairs."""


class NotInComponentDomain(HahnExpError, ValueError):
    pass


class NotPseudoCauchy(HahnExpError, ValueError):
    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class NotInValuationRing(HahnExpError, ValueError):
    pass


class NotPositive(HahnExpError, ValueError):
    pass


class NonRationalExponents(HahnExpError, ValueError):
    pass


class TruncationError(HahnExpError, ArithmeticError):
    """The truncation certificate is too low to decide the requested quantity."""


class NotNegative(HahnExpError, ValueError):
    pass


class NotWellDefined(HahnExpError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotContractionAxioms(HahnExpError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotInfinitesimal(HahnExpError, ValueError):
    pass


class NotOnePlusInfinitesimal(HahnExpError, ValueError):
    pass


class NotPurelyInfinite(HahnExpError, ValueError):
    pass


class MiddleUnsupported(HahnExpError, ValueError):
    pass


class ParseError(HahnExpError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position
