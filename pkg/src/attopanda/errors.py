"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the physical or numerical domain of an operation."""


class SelectionRuleError(DomainError):
    """Angular-momentum selection rule forbids the requested transition."""


class ConfigurationError(ValueError):
    """Grid or scenario configuration cannot support the computation."""


class GridError(RuntimeError):
    """Numerical grid too coarse or matching region invalid."""


class ConvergenceError(RuntimeError):
    """Iterative solve failed to converge or bracket."""
