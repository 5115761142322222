"""
This module handles simulation exceptions.
"""

from pyholevo.exceptions import ArgumentError


class InvalidCircuitError(ArgumentError):
    """Error raised when a circuit specification cannot be simulated."""

    _MESSAGE = 'Invalid circuit specification: {}'

    def __init__(self, additional_information: str) -> None:
        """Creates an instance of InvalidCircuitError.

        Args:
            additional_information: Additional information about the error.
        """

        super().__init__(self._MESSAGE.format(additional_information))
