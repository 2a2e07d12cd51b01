"""Exception types shared across the package."""


class RankMismatchError(ValueError):
    """Raised when combining group algebra elements over different ranks."""


class ResourceCapError(RuntimeError):
    """Raised when an exact computation would exceed the term-pair cap."""


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature fails to converge within its budget."""
