"""Exception hierarchy shared by the library and the CLI."""


class NCQError(Exception):
    """Base class for all package errors."""


class DomainError(NCQError, ValueError):
    """Inputs outside the admissible physical domain.

    ``code`` is a short machine-readable tag that ends up in the ``status``
    column of sweep output.
    """

    def __init__(self, message: str, code: str = "domain"):
        super().__init__(message)
        self.code = code


class BracketError(NCQError, ValueError):
    """Root bracket endpoints do not straddle a sign change."""


class ConvergenceError(NCQError, RuntimeError):
    """Iterative solver hit its cap without meeting tolerance."""


class ParseError(NCQError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(NCQError, ValueError):
    pass


class IoError(NCQError, OSError):
    pass
