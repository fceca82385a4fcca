"""Exception types shared across the package.

The CLI maps these onto exit codes: validation problems exit 2, blown
search budgets exit 3, violated internal consistency checks exit 4.
"""


class InvalidDimensionError(ValueError):
    """System dimension outside the constructor's domain."""


class InvalidPolygonError(ValueError):
    """Polygon theories need at least three vertices."""


class SystemMismatchError(TypeError):
    """Operands live on different (or incompatible) systems."""


class InvalidStateError(ValueError):
    """A state, effect, test or decomposition violates a domain invariant."""


class UnsupportedBackendError(TypeError):
    """Operation is only defined for one of the two backends."""


class ResourceBudgetError(RuntimeError):
    """A bounded search exceeded its configured budget."""


class ConsistencyError(RuntimeError):
    """A relation that holds as a theorem failed numerically.

    This signals corrupted input or a numerical problem, never a valid
    outcome.
    """
