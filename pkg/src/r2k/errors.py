"""Exception types raised by the kernel.

Audits never raise for a failed identity; they return a CheckReport carrying
the witness. Exceptions are reserved for malformed input and violated
preconditions.
"""


class R2KError(Exception):
    pass


class ParseError(R2KError, ValueError):
    """Malformed scalar/element/index text. ``position`` is a 0-based offset."""

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class ZeroDenominator(R2KError, ZeroDivisionError):
    pass


class DivisionByZero(R2KError, ZeroDivisionError):
    pass


class DenominatorVanishes(R2KError, ZeroDivisionError):
    pass


class RankMismatch(R2KError, ValueError):
    pass


class NotHomogeneous(R2KError, ValueError):
    pass


class WindowTooSmall(R2KError, ValueError):
    pass


class ZeroGammaForEvenInner(R2KError, ValueError):
    pass


class DegreeMismatch(R2KError, ValueError):
    pass


class ParityMismatch(R2KError, ValueError):
    pass


class NotDerivation(R2KError):
    pass


class ClassificationMismatch(R2KError):
    pass


class CentralNotKilled(R2KError):
    pass


class ConfigError(R2KError, ValueError):
    pass
