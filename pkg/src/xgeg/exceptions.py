"""Exception hierarchy shared by all modules."""


class XGegError(Exception):
    """Base class for errors raised by this package."""


class IncompatibleExponentError(XGegError, ValueError):
    """Quasi-rational terms whose exponents differ by a non-integer."""


class NotEigenfunctionError(XGegError, ValueError):
    """A seed function fails its eigenvalue equation."""


class DegenerateSeedsError(XGegError, ValueError):
    """Seed functions are linearly dependent or share an eigenvalue."""


class GaugeError(XGegError, ValueError):
    """An operator or chain is not in the gauge a check requires."""


class InadmissibleParametersError(XGegError, ValueError):
    """Deformation parameters violate the positivity thresholds."""


class ConsistencyError(XGegError, AssertionError):
    """Two independent computations of the same quantity disagree."""
