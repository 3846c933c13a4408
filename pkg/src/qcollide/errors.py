"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called with inputs that violate its contract."""


class ConfigurationError(ValueError):
    """A parameter lies outside its physically allowed range."""


class DimensionLimitError(PreconditionError):
    """A tensor product would exceed the configured dimension cap."""


class IntegrityError(RuntimeError):
    """A density-matrix invariant broke beyond tolerance during evolution."""

    def __init__(self, phase: str, detail: str):
        super().__init__(f"integrity violation after phase '{phase}': {detail}")
        self.phase = phase
        self.detail = detail
