"""Exception hierarchy shared by every module."""


class BraidContactError(ValueError):
    """Base class for domain errors (CLI exit status 1)."""


class BraidParseError(BraidContactError):
    pass


class StrandMismatchError(BraidContactError):
    pass


class RingMismatchError(BraidContactError):
    pass


class UnknownSymbolError(BraidContactError):
    pass


class BudgetExceededError(BraidContactError):
    pass


class DegenerateCriticalPointError(BraidContactError):
    pass


class SeparationError(BraidContactError):
    pass


class GeometryError(BraidContactError):
    """Critical structure does not match the one-minimum-one-maximum hypothesis."""


class FlowError(BraidContactError):
    pass


class AmbiguousTerminalError(FlowError):
    pass
