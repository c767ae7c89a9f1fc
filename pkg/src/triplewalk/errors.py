"""Exception and warning types shared across the package."""


class SpecError(ValueError):
    """A model parameter or operation input violates a documented bound."""


class ZOnSpectrumError(ValueError):
    """An energy argument lies on (or within guard distance of) a spectrum."""


class ConvergenceError(RuntimeError):
    """An iterative routine exhausted its iteration budget."""


class DegeneratePartitionError(ValueError):
    """A left/right analysis was requested for an empty chain part."""


class BracketFailureWarning(UserWarning):
    """A root scan found an interval where sign analysis was inconclusive."""
