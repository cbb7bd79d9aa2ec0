"""Exception types shared across the package."""


class MaxPlusError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(MaxPlusError):
    """Matrix or vector operands have incompatible shapes."""


class CycleError(MaxPlusError):
    """An operation required an acyclic matrix graph but found a cycle.

    ``witness`` is a node sequence [c0, c1, ..., c0] whose consecutive
    pairs are arcs of the offending graph.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = list(witness)


class SpecValidationError(MaxPlusError):
    """A network description violates structural invariants.

    ``violations`` lists one human-readable string per breach.
    """

    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class CompilationError(MaxPlusError):
    """The zero-buffer graph of a network is cyclic, so no explicit
    state equation exists.  Carries the cycle witness in 1-based node ids."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = list(witness)


class ServiceTableError(MaxPlusError):
    """A service-time source could not supply the requested entries."""
