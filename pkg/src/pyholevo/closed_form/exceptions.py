"""
This module handles closed-form solution exceptions.
"""

from pyholevo.exceptions import ArgumentError


class OutOfRangeError(ArgumentError):
    """Error raised when a closed-form expression is evaluated outside its domain."""

    _MESSAGE = 'Closed form is not defined here: {}'

    def __init__(self, additional_information: str) -> None:
        """Creates an instance of OutOfRangeError.

        Args:
            additional_information: Additional information about the error.
        """

        super().__init__(self._MESSAGE.format(additional_information))
