"""Exception hierarchy shared by every module of the package."""


class AbelianLinesError(Exception):
    """Base class for all package errors."""


class DuplicateRoot(AbelianLinesError, ValueError):
    pass


class ZeroLine(AbelianLinesError, ValueError):
    """A singular line passes through the origin (offset equal to zero)."""


class NotApplicable(AbelianLinesError):
    pass


class PolesRemain(AbelianLinesError):
    pass


class InvalidExponent(AbelianLinesError, ValueError):
    pass


class ShapeViolation(AbelianLinesError):
    """An intermediate of the derivation-division pipeline lost its expected form."""


class UnknownCase(AbelianLinesError, KeyError):
    pass


class NumericFailure(AbelianLinesError):
    """Base for failures of the floating point machinery (CLI exit code 3)."""


class NearSingular(NumericFailure):
    pass


class LeftAnnulus(NumericFailure):
    pass


class NoReturn(NumericFailure):
    pass


class ConfigError(AbelianLinesError, ValueError):
    pass
