"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument violates a documented precondition (bad physics input)."""


class NumericalConsistencyError(RuntimeError):
    """An internal invariant broke down (e.g. a little-group element that
    fails to stabilize the reference momentum)."""


class DegenerateProtocolError(RuntimeError):
    """A post-selected protocol step has vanishing success probability."""


class ConfigError(ValueError):
    """A scenario/configuration file or CLI override is malformed."""
