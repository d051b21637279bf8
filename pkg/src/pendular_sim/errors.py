class ConfigError(ValueError):
    """Invalid scan configuration or CLI arguments."""


class ConvergenceError(RuntimeError):
    """Basis truncation failed to converge for a requested field strength."""
