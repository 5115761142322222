"""
This module handles command-line exceptions.
"""

from pyholevo.exceptions import PyHolevoError


class InvariantViolationError(PyHolevoError):
    """Error raised when a computed result fails a consistency check that was requested as fatal."""

    _MESSAGE = 'Invariant violated: {}'

    def __init__(self, additional_information: str) -> None:
        """Creates an instance of InvariantViolationError.

        Args:
            additional_information: Additional information about the error.
        """

        super().__init__(self._MESSAGE.format(additional_information))
