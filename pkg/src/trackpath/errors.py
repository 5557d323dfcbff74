"""Exception types raised across the toolkit."""


class TrackpathError(Exception):
    """Base class for all toolkit errors."""


class MalformedEdge(TrackpathError, ValueError):
    def __init__(self, u, v, reason="malformed edge"):
        super().__init__(f"{reason}: ({u}, {v})")
        self.u = u
        self.v = v


class FormatError(TrackpathError, ValueError):
    """Malformed text input; ``line`` is 1-based or None."""

    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class CapExceeded(TrackpathError):
    """An exhaustive enumeration exceeded its budget."""

    def __init__(self, what, cap):
        super().__init__(f"more than {cap} {what}")
        self.what = what
        self.cap = cap


class BudgetExceeded(TrackpathError):
    def __init__(self, budget):
        super().__init__(f"no tracking set of size <= {budget}")
        self.budget = budget


class Disconnected(TrackpathError):
    pass


class EmptyResult(TrackpathError):
    """No s-t path exists."""


class PreconditionViolated(TrackpathError):
    pass


class BadParameter(TrackpathError, ValueError):
    pass


class LayoutInvalid(TrackpathError):
    pass


class SlotConflict(LayoutInvalid):
    pass


class SideMismatch(LayoutInvalid):
    pass


class ForbiddenSlot(LayoutInvalid):
    pass
