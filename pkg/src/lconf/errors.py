"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input failed a check that the requested construction relies on."""
