"""Shared exception types for model validation and degenerate inputs."""


class ConfigurationError(ValueError):
    """A model component, argument combination, or input file is structurally invalid."""


class DegenerateModelError(ValueError):
    """A computation was requested of a model that cannot support it."""
