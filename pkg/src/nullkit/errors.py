"""Exception hierarchy shared by every nullkit module."""


class NullkitError(Exception):
    """Base class for all errors raised by nullkit."""


class FieldError(NullkitError):
    """Invalid field construction or mixed-context arithmetic."""


class FieldTooSmall(FieldError):
    """The requested sample set or grid does not fit; extend the field."""


class ArityError(NullkitError):
    """Point or substitution shape does not match a polynomial/oracle arity."""


class DegreeBoundViolation(NullkitError):
    """A blackbox disagreed with its own interpolant on a held-out point."""


class BudgetExceeded(NullkitError):
    """A configured work budget (GB steps, linear-system size) ran out."""


class ResampleError(NullkitError):
    """Random choices stayed degenerate after the allowed retries."""


class NoCertificate(NullkitError):
    """No degree-bounded Nullstellensatz certificate was found."""


class ParseError(NullkitError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)
