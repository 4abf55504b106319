"""Exception types shared across the package."""


class GenFermatError(Exception):
    """Base class for all package errors."""


class TruncationUnderflow(GenFermatError):
    pass


class NonzeroConstantTerm(GenFermatError):
    pass


class InvalidCurve(GenFermatError, ValueError):
    """Raised by curve validation. ``reason`` names the violated constraint."""

    def __init__(self, reason, detail=""):
        self.reason = reason
        self.detail = detail
        msg = reason if not detail else f"{reason}: {detail}"
        super().__init__(msg)


class BranchCollision(GenFermatError, ValueError):
    pass


class PrecisionExhausted(GenFermatError):
    """A vanishing order could not be resolved at the current truncation."""


class PrecisionCapExceeded(GenFermatError):
    pass


class NegativeIndex(GenFermatError):
    pass


class NotApplicable(GenFermatError, ValueError):
    pass


class TheoremViolation(GenFermatError):
    """A computed quantity disagrees with a proven closed form."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class ConsistencyFailure(GenFermatError):
    def __init__(self, message, table=None):
        self.table = table
        super().__init__(message)
