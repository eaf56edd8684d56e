"""Exception hierarchy shared by every module of the package."""


class ReesError(Exception):
    """Base class for all errors raised by reesalg."""


class ParseError(ReesError, ValueError):
    """Malformed polynomial text or instance document.

    ``pos`` is a 0-based offset into the parsed string; ``line``/``column``
    are 1-based and only set for instance documents.
    """

    def __init__(self, message, pos=None, line=None, column=None, text=None):
        self.message = message
        self.pos = pos
        self.line = line
        self.column = column
        self.text = text
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if pos is not None and line is None:
            where.append(f"position {pos}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class RingMismatchError(ReesError, ValueError):
    pass


class RankMismatchError(ReesError, ValueError):
    pass


class PreconditionError(ReesError, ValueError):
    """An operation was called on inputs outside its documented domain."""


class NotMPrimaryError(PreconditionError):
    pass


class InvalidCertificateError(PreconditionError):
    pass


class UnsupportedError(ReesError):
    """The requested check needs monomial data and got something else."""


class GuardExceeded(ReesError):
    """An instance-size guard refused to run a computation."""


class ZeroQuotientError(PreconditionError):
    """F/M vanishes (locally at m): M is all of F."""


class NotFiniteLengthError(PreconditionError):
    """F/M does not have finite length."""
