"""Exception hierarchy shared across the package."""


class ArchemoError(Exception):
    """Base class for all errors raised by this package."""


class NonPositiveCoefficient(ArchemoError):
    def __init__(self, field):
        self.field = field
        super().__init__(f"coefficient {field!r} must be strictly positive")


class InvalidKappa(ArchemoError):
    pass


class InvalidDimension(ArchemoError):
    pass


class DegenerateDenominator(ArchemoError):
    pass


class InvalidExponent(ArchemoError):
    pass


class InvalidEps(ArchemoError):
    pass


class TooCoarse(ArchemoError):
    pass


class LengthMismatch(ArchemoError):
    pass


class SingularSystem(ArchemoError):
    pass


class StepCollapse(ArchemoError):
    """Time step fell below dt_min; usually signals blow-up."""


class InvalidInitialData(ArchemoError):
    pass


class InfeasibleMass(ArchemoError):
    pass


class BadCore(ArchemoError):
    pass


class BadWindow(ArchemoError):
    pass


class BadExponent(ArchemoError):
    pass


class EmptyTrace(ArchemoError):
    pass


class ParseError(ArchemoError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownKey(ArchemoError):
    def __init__(self, key, line=None):
        self.key = key
        self.line = line
        msg = f"unknown config key {key!r}"
        if line is not None:
            msg += f" (line {line})"
        super().__init__(msg)


class ValidationError(ArchemoError):
    pass
