"""Exception hierarchy shared by every digifix module."""


class DigifixError(Exception):
    """Base class for all errors raised by digifix."""


class InvalidImageError(DigifixError, ValueError):
    pass


class DimensionMismatchError(DigifixError, ValueError):
    pass


class PointNotInImageError(DigifixError, KeyError):
    pass


class InvalidMapError(DigifixError, ValueError):
    pass


class InvalidMetricError(DigifixError, ValueError):
    pass


class DisconnectedImageError(InvalidMetricError):
    """The shortest-path metric is undefined on a disconnected image."""


class InvalidConditionError(DigifixError, ValueError):
    pass


class PreconditionError(DigifixError):
    """A theorem was invoked on inputs that do not meet its hypotheses."""


class InternalInconsistencyError(DigifixError):
    """A proven conclusion failed to hold. This always indicates a bug."""


class BudgetExceededError(DigifixError):
    pass


class SamplingBudgetExhausted(BudgetExceededError):
    pass
