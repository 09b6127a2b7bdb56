"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input."""


class SizeLimitError(ValueError):
    """Requested computation exceeds a documented size bound."""


class UnsupportedError(NotImplementedError):
    """Operation is valid mathematically but not implemented here."""


class PreconditionError(ValueError):
    """A documented precondition on the arguments does not hold."""


class UndefinedRatioError(ZeroDivisionError):
    """A ratio was requested whose denominator rank is zero."""
