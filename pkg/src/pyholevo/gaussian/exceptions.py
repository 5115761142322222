"""
This module handles Gaussian probe exceptions.
"""

from pyholevo.exceptions import ArgumentError, NumericalError


class InvalidStateError(ArgumentError):
    """Error raised when the probe data do not describe a valid Gaussian state."""

    def __init__(self, message: str) -> None:
        """Creates an instance of InvalidStateError.

        Args:
            message: Message describing the error.
        """

        super().__init__(message)

    def __str__(self) -> str:
        return super().__str__()


class UnidentifiableParameterError(ArgumentError):
    """Error raised when the displacement parameters are not independently imprinted."""

    def __init__(self, message: str) -> None:
        """Creates an instance of UnidentifiableParameterError.

        Args:
            message: Message describing the error.
        """

        super().__init__(message)

    def __str__(self) -> str:
        return super().__str__()


class ParseProbeError(ArgumentError):
    """Error raised when a probe could not be parsed from its JSON form."""

    _MESSAGE = 'Error parsing probe model: {}'

    def __init__(self, additional_information: str) -> None:
        """Creates an instance of ParseProbeError.

        Args:
            additional_information: Additional information about the error.
        """

        super().__init__(self._MESSAGE.format(additional_information))


class UndefinedConstraintError(NumericalError):
    """Error raised when (I + i/2 D)^-1 does not exist because the probe has pure-state directions."""

    _MESSAGE = 'Constraint matrix (I + i/2 D)^-1 is undefined: probe has {} pure-state direction(s)'

    def __init__(self, pure_directions: int) -> None:
        """Creates an instance of UndefinedConstraintError.

        Args:
            pure_directions: Number of zero eigenvalues of I + i/2 D.
        """

        super().__init__(self._MESSAGE.format(pure_directions))
