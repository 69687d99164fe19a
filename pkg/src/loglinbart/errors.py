"""Exception types shared across the package."""

__all__ = [
    "DomainError",
    "GigParameterError",
    "MarginalDivergenceError",
    "IngestError",
    "ConfigError",
    "NumericalError",
]


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of a function."""


class GigParameterError(ValueError):
    """GIG parameters match none of the valid regimes (divergent integral)."""


class MarginalDivergenceError(ValueError):
    """The integrated leaf likelihood diverges (s = 0 with r >= shape)."""


class IngestError(ValueError):
    """Input data could not be ingested (exit code 2 on the CLI)."""


class ConfigError(ValueError):
    """Run configuration is invalid (exit code 3 on the CLI)."""


class NumericalError(RuntimeError):
    """An MCMC run hit a numerical failure (exit code 4 on the CLI)."""
