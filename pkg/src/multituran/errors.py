"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid argument for an operation (bad generator params, bad pattern, ...)."""


class FormatError(ValueError):
    """Malformed serialized input (JSON schema violation, bad graph6 string)."""


class LinearityError(ValueError):
    """Two hyperedges intersect in more than one vertex.

    Carries the offending pair of hyperedge indices in ``pair``.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ResourceError(RuntimeError):
    """A guarded computation exceeded its work limit (copy enumeration, canonical form)."""


class BudgetExhaustedError(ResourceError):
    """An exact search ran out of its node budget.

    ``best_value`` / ``best_witness`` carry the best bounds found so far so
    callers can still use the partial result.
    """

    def __init__(self, message, best_value=None, best_witness=None):
        super().__init__(message)
        self.best_value = best_value
        self.best_witness = best_witness
