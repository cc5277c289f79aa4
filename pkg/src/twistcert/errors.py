"""Exception types shared across the package."""


class TwistCertError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(TwistCertError):
    """Operands have incompatible lengths or shapes."""


class ParityError(TwistCertError):
    """A coefficient has the wrong parity for its slot."""


class CapacityError(TwistCertError):
    """An exhaustive routine was asked to exceed its configured limit."""


class PreconditionError(TwistCertError):
    """A documented precondition of an operation does not hold."""


class InvalidFormError(TwistCertError):
    """The exponential sum of the form does not have the required magnitude."""


class ValidationError(TwistCertError):
    """An operation received a diagram that fails validation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConstructionError(TwistCertError):
    """Diagram assembly was rejected; carries the validation report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DocumentError(TwistCertError):
    """A document failed structural parsing; the message names the field."""
