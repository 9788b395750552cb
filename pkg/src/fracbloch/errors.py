"""Exception types shared across the package."""


class FracblochError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(FracblochError, ValueError):
    """A physical or structural parameter violates its contract."""


class SingularParameterError(InvalidParameterError):
    """A parameter value makes the requested quantity diverge (e.g. u0 = 0)."""


class DimensionCapError(FracblochError, RuntimeError):
    """A requested operator dimension exceeds the configured cap."""

    def __init__(self, dim: int, cap: int):
        super().__init__(f"operator dimension {dim} exceeds the cap of {cap}")
        self.dim = dim
        self.cap = cap


class NumericError(FracblochError, RuntimeError):
    """Numerical failure (non-finite entries, eigensolver breakdown)."""


class ConfigError(FracblochError, ValueError):
    """Scenario configuration is malformed. Carries a best-effort line number."""

    def __init__(self, message: str, filename: str = "<config>", line: int = 0):
        super().__init__(f"{filename}:{line}: {message}")
        self.filename = filename
        self.line = line
