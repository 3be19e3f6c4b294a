"""Exception hierarchy shared by every module of the package."""


class YBError(Exception):
    """Base class for all errors raised by ybsys."""


class RingMismatch(YBError):
    pass


class UndeclaredVariable(YBError):
    def __init__(self, name):
        super().__init__(f"undeclared variable {name!r}")
        self.name = name


class ExpressionSyntaxError(YBError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NegativeExponent(YBError):
    pass


class DimMismatch(YBError):
    pass


class InvalidAlgebra(YBError):
    pass


class UnknownCase(YBError):
    pass


class SearchSpaceTooLarge(YBError):
    pass


class NotHomogeneous(YBError):
    pass


class UnboundParameter(YBError):
    pass


class DocumentError(YBError):
    """Malformed or unsupported JSON document."""
