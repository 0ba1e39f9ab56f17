"""Exception hierarchy shared by all corrlab modules."""


class CorrlabError(Exception):
    """Base class for every error raised by corrlab."""


class ParameterError(CorrlabError, ValueError):
    """An argument violates its documented domain."""


class SizeError(CorrlabError, ValueError):
    """Matrix dimensions are incompatible or too large."""


class NotPSDError(CorrlabError, ArithmeticError):
    """A correlation matrix has an eigenvalue below the clipping tolerance."""

    def __init__(self, message, min_eigenvalue=None, max_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue
        self.max_eigenvalue = max_eigenvalue


class QuadratureError(CorrlabError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class ConfigError(CorrlabError, ValueError):
    """A scenario configuration file could not be parsed or validated."""

    def __init__(self, message, field=None, line=None):
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.field = field
        self.line = line
