"""
This module handles Fisher information bound exceptions.
"""

from pyholevo.exceptions import NumericalError


class UndefinedBoundError(NumericalError):
    """Error raised when a Cramer-Rao bound does not exist for the probe."""

    _MESSAGE = 'Bound is undefined: {}'

    def __init__(self, additional_information: str) -> None:
        """Creates an instance of UndefinedBoundError.

        Args:
            additional_information: Additional information about the error.
        """

        super().__init__(self._MESSAGE.format(additional_information))
