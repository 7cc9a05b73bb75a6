"""Exception types shared across the package."""


class QZetaError(Exception):
    """Base class for all package errors."""


class AdmissibilityError(QZetaError, ValueError):
    """A composition or word fails the convergence/shape requirement."""


class DivergenceError(QZetaError, ValueError):
    """A series was requested outside its convergence domain."""


class SingularSeriesError(QZetaError, ZeroDivisionError):
    """Inversion (or log) of a truncated series with no unit constant term."""


class PoleError(QZetaError, ZeroDivisionError):
    """A parameter sits at (or numerically on top of) a pole."""


class DomainError(QZetaError, ValueError):
    """An argument lies outside the supported real/complex domain."""


class UnsupportedRequestError(QZetaError, ValueError):
    """The requested operation has no meaning in the selected backend."""


class RegistryError(QZetaError, KeyError):
    """Unknown identity-check id."""


class ParameterError(QZetaError, ValueError):
    """Check parameters outside the documented ranges."""


class ResourceError(QZetaError, ValueError):
    """Enumeration request too large for desk scale."""
