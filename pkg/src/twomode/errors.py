"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A physical or numerical parameter is outside its admissible range."""


class NumericalFailureError(ArithmeticError):
    """An iterative routine failed to converge."""
