"""Exception types shared across the package."""


class PdlError(Exception):
    """Base class for all package-specific errors."""


class FormulaSyntaxError(PdlError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + where)


class TheorySyntaxError(FormulaSyntaxError):
    pass


class PriorityCycleError(PdlError):
    def __init__(self, cycle: list[str]):
        self.cycle = list(cycle)
        super().__init__("priority relation is not asymmetric: " + " > ".join(self.cycle))


class UnknownDefaultError(PdlError):
    pass


class DuplicateDefaultError(PdlError):
    pass


class NotNormalError(PdlError):
    pass


class NotSeminormalError(PdlError):
    pass


class ClassMismatchError(PdlError):
    """Input does not belong to the syntactic class a fast path requires."""


class BoundExceededError(PdlError):
    """An exhaustive search would exceed its configured size bound."""


class ClauseSizeError(PdlError):
    """Distributive clausal conversion would exceed the size bound."""


class UnsatisfiableQbfError(PdlError):
    """The two-level QBF instance has no satisfying outer assignment."""
