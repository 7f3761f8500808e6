"""Exception types shared across the package."""


class HypboundError(Exception):
    """Base class for all library errors."""


class ValidationError(HypboundError, ValueError):
    """A value violates the invariants of its declared type."""


class DomainError(HypboundError, ValueError):
    """Operands are individually valid but incompatible (model mismatch, pole)."""


class PreconditionError(HypboundError, ValueError):
    """An operation's stated precondition does not hold."""


class IntegrityError(HypboundError, RuntimeError):
    """A computed result landed outside its contracted range."""


class NumericalError(HypboundError, RuntimeError):
    """A numerical procedure failed to converge or lost too much precision."""


class UnsupportedError(HypboundError, ValueError):
    """The requested conversion or combination is not defined."""


class UsageError(HypboundError, ValueError):
    """Bad user-facing input: unknown family, malformed spec, invalid config."""
