"""Shared exception and warning types."""


class CapacityError(RuntimeError):
    """Raised when a search exceeds its configured state limit."""

    def __init__(self, states, limit=None):
        self.states = states
        self.limit = limit
        msg = f"state limit exceeded after {states} positions"
        if limit is not None:
            msg += f" (limit {limit})"
        super().__init__(msg)


class KernelUnsupported(RuntimeError):
    """Raised by a kernel that cannot handle the problem size; callers fall back."""


class GameContractError(ValueError):
    """An operation was called on a position that violates its precondition."""


class CycleError(RuntimeError):
    """A cyclic play was detected while evaluating a gamegraph."""

    def __init__(self, position):
        self.position = position
        super().__init__(f"cyclic play through position {position!r}")


class InvalidMapError(ValueError):
    """A position map sent a position outside the target gamegraph."""


class NonCanonicalLatticeWarning(UserWarning):
    """Every dimension is 2; results are exploratory, not covered by the grid theorems."""
