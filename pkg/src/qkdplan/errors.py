"""Exception hierarchy for qkdplan."""


class QKDPlanError(Exception):
    """Base class for all errors raised by this package."""


class TopologyParseError(QKDPlanError):
    """A topology, request or cost file could not be parsed.

    The message carries the offending line number when one is known.
    """

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ValidationError(QKDPlanError):
    """An object violates one of its structural invariants."""


class UnknownNodeError(ValidationError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class InfeasibleError(QKDPlanError):
    """No feasible plan exists (e.g. a request endpoint is unreachable)."""


class SizeGuardError(QKDPlanError):
    """An instance is too large for an exhaustive routine."""


class LPFormatError(QKDPlanError):
    """LP export or read-back failed (name collision, malformed file)."""
