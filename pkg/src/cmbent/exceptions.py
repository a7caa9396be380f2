"""Exception hierarchy shared by all cmbent modules."""


class CmbentError(Exception):
    pass


class BadParameters(CmbentError, ValueError):
    """Raised when (n, k, a) violate a precondition.

    ``failures`` holds one human readable line per violated condition,
    e.g. ``["k must be odd", "gcd(n, k) must be 1"]``.
    """

    def __init__(self, failures):
        if isinstance(failures, str):
            failures = [failures]
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


class ReducibleModulus(CmbentError, ValueError):
    pass


class DegreeMismatch(CmbentError, ValueError):
    pass


class ZeroInverse(CmbentError, ZeroDivisionError):
    pass


class ZeroArgument(CmbentError, ValueError):
    pass


class NotInPrimeSubfield(CmbentError, ArithmeticError):
    pass


class SizeLimit(CmbentError, ValueError):
    pass


class EmptyRepresentation(CmbentError, ValueError):
    pass


class LengthMismatch(CmbentError, ValueError):
    pass


class SingularTraceForm(CmbentError, ArithmeticError):
    pass


class NoMatchingRotation(CmbentError, ArithmeticError):
    pass
