class CarterKitError(Exception):
    """Base class for engine errors."""


class PermutationError(CarterKitError, ValueError):
    pass


class CapacityError(CarterKitError):
    """An engine limit (order, degree, node or enumeration budget) was exceeded."""

    def __init__(self, message: str, partial=None, path=None):
        super().__init__(message)
        self.partial = partial
        self.path = list(path or [])


class NotSolvableError(CarterKitError, ValueError):
    pass


class NotSimpleError(CarterKitError, ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class VerificationError(CarterKitError):
    """A certificate check failed; the message names the broken property."""


class SpecSyntaxError(CarterKitError, ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} at line {line}, column {column}" if line else message)
        self.line = line
        self.column = column
