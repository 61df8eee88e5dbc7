"""Exception hierarchy shared by every module of the package."""


class PosetTopError(Exception):
    """Base class for all errors raised by posettop."""


class CycleDetected(PosetTopError):
    pass


class UnknownLabel(PosetTopError):
    pass


class DuplicateLabel(PosetTopError):
    pass


class NotHomogeneous(PosetTopError):
    pass


class NotConnected(PosetTopError):
    pass


class NotAComplex(PosetTopError):
    """Raised when consecutive boundary matrices do not compose to zero."""


class CapExceeded(PosetTopError):
    """Raised when cube enumeration would exceed the configured output cap."""

    def __init__(self, cap: int, partial: int, dim: int | None = None):
        self.cap = cap
        self.partial = partial
        self.dim = dim
        where = f" in dimension {dim}" if dim is not None else ""
        super().__init__(f"cube cap {cap} exceeded{where} (enumerated {partial} so far)")


class BudgetExhausted(PosetTopError):
    """The collapse search ran out of nodes before reaching a verdict."""


class BasepointMismatch(PosetTopError):
    pass


class NonMonotoneInput(PosetTopError):
    pass


class InvalidLoop(PosetTopError):
    pass


class ParseError(PosetTopError):
    pass


class InternalInvariantViolation(PosetTopError):
    """A computed object failed a mathematical identity that must always hold."""
