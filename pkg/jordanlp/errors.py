class JordanLpError(Exception):
    """Base class for errors raised by jordanlp."""


class DimensionMismatch(JordanLpError, ValueError):
    pass


class AlgebraMismatch(JordanLpError, ValueError):
    """Operands live in different algebras."""


class NotHermitian(JordanLpError, ValueError):
    pass


class NotSelfadjoint(JordanLpError, ValueError):
    pass


class ConvergenceError(JordanLpError, RuntimeError):
    pass


class FunctionDomainError(JordanLpError, ValueError):
    """A scalar function is undefined (or not finite) at an eigenvalue."""

    def __init__(self, eigenvalue: float, msg: str = None):
        self.eigenvalue = eigenvalue
        if msg is None:
            msg = f"function is undefined at eigenvalue {eigenvalue!r}"
        super().__init__(msg)


class NotFaithful(JordanLpError, ValueError):
    pass


class NotSubalgebra(JordanLpError, ValueError):
    pass


class MapCheckFailed(JordanLpError, ValueError):
    """An element map failed an involutivity, antiautomorphism or
    state-preservation check."""


class UnsupportedKind(JordanLpError, NotImplementedError):
    pass


class ConfigError(JordanLpError, ValueError):
    pass
