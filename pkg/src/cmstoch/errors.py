class CMStochError(Exception):
    """Base class for errors raised by this package."""


class GameSyntaxError(CMStochError, ValueError):
    """The game file is not well-formed JSON."""

    def __init__(self, msg, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            msg = f"{msg} (line {line}, column {column})"
        super().__init__(msg)


class GameValidationError(CMStochError, ValueError):
    """The game file parses but breaks a model invariant."""


class ControllerError(CMStochError, ValueError):
    """The operation needs a single-controller game and did not get one."""


class SizeGuardError(CMStochError, RuntimeError):
    """An exhaustive enumeration would exceed the configured size guard."""


class KaplanskyInapplicable(CMStochError, ValueError):
    """The determinant/cofactor value formula does not apply to this matrix."""


class SupportVerificationError(CMStochError, RuntimeError):
    """An exact fixed-point or optimality certificate failed."""

    def __init__(self, msg, residual=None):
        self.residual = residual
        super().__init__(msg)
