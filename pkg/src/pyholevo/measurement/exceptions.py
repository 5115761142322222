"""
This module handles measurement plan exceptions.
"""

from pyholevo.exceptions import ArgumentError, NumericalError


class DegenerateOptimizerError(NumericalError):
    """Error raised when M F M^T is singular and no estimator can be extracted."""

    _MESSAGE = 'Optimizer is degenerate: {}'

    def __init__(self, additional_information: str) -> None:
        """Creates an instance of DegenerateOptimizerError.

        Args:
            additional_information: Additional information about the error.
        """

        super().__init__(self._MESSAGE.format(additional_information))


class BiasedPlanError(ArgumentError):
    """Error raised when a measurement plan does not estimate every parameter without bias."""

    _MESSAGE = 'Measurement plan is biased: {}'

    def __init__(self, additional_information: str) -> None:
        """Creates an instance of BiasedPlanError.

        Args:
            additional_information: Additional information about the error.
        """

        super().__init__(self._MESSAGE.format(additional_information))
