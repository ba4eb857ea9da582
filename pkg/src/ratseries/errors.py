"""Exception hierarchy shared by all subsystems.

``DomainError`` subclasses signal mathematically invalid requests (CLI exit
code 3), ``SchemaError`` signals malformed input documents (exit 2), and
``ResourceLimitError`` signals a search that exceeded its configured ceiling
(exit 4).
"""


class RatSeriesError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RatSeriesError):
    """A request that is outside the mathematical domain of an operation."""


class ModeMismatchError(DomainError):
    """Exponent modes or root bases disagree."""


class ShapeMismatchError(DomainError):
    """Multi-exponent lengths or ambient variable counts disagree."""


class RingMismatchError(DomainError):
    """Operands belong to different coefficient rings or contexts."""


class ParameterError(DomainError):
    """Invalid construction parameters (bad depth, precision, kind...)."""


class NonUnitError(DomainError):
    """Inversion of a non-unit requested in an integral ring."""


class TowerError(DomainError):
    """An evaluation tower is too shallow or fails compatibility.

    ``stage`` carries the first index at which compatibility breaks, when
    known.
    """

    def __init__(self, message: str, stage: int | None = None):
        super().__init__(message)
        self.stage = stage


class UnsupportedError(DomainError):
    """Input shape the algorithm deliberately does not handle (reported,
    never guessed)."""


class SchemaError(RatSeriesError):
    """Malformed or unparseable input document."""


class ResourceLimitError(RatSeriesError):
    """A bounded enumeration exceeded its configured ceiling."""
