"""Exception types raised across the package."""


class JetSplitError(Exception):
    """Base class for every error raised by jetsplit."""


class FieldMismatch(JetSplitError, TypeError):
    pass


class DivisionByZero(JetSplitError, ZeroDivisionError):
    pass


class Unsupported(JetSplitError, ValueError):
    pass


class InvalidParams(JetSplitError, ValueError):
    pass


class ShapeMismatch(JetSplitError, ValueError):
    pass


class CharacteristicDividesN(InvalidParams):
    """The alternative bases only exist when the characteristic does not divide n."""


class NotInvertible(JetSplitError, ValueError):
    pass


class WindowTooSmall(JetSplitError, RuntimeError):
    pass


class GluingFailed(JetSplitError, RuntimeError):
    pass


class MissingSolution(JetSplitError, ValueError):
    pass


class UnexpectedSingular(JetSplitError, RuntimeError):
    pass


class CertificateError(JetSplitError, RuntimeError):
    """A computed factorization failed its own exact verification."""
