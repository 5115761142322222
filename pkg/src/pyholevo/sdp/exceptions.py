"""
This module handles semidefinite programming exceptions.
"""

from typing import Dict, Optional, Sequence

import numpy as np

from pyholevo.exceptions import NumericalError


class SdpError(NumericalError):
    """Top level exception for the SDP solver and bound extraction."""

    def __init__(self, message: str) -> None:
        """Creates an instance of SdpError.

        Args:
            message: Message describing the error.
        """

        super().__init__(message)

    def __str__(self) -> str:
        return self.message


class ConvergenceError(SdpError):
    """Error raised when the interior-point iteration does not reach the requested tolerance.

    Attributes:
        best_y: Dual iterate with the smallest residuals seen.
        best_x_blocks: Primal iterate matching ``best_y``.
        residuals: Gap and infeasibility norms of the best iterate.
    """

    _MESSAGE = 'SDP solver did not converge: {}'

    def __init__(
        self,
        additional_information: str,
        best_y: Optional[np.ndarray] = None,
        best_x_blocks: Optional[Sequence[np.ndarray]] = None,
        residuals: Optional[Dict[str, float]] = None,
    ) -> None:
        """Creates an instance of ConvergenceError.

        Args:
            additional_information: Additional information about the error.
            best_y: Dual iterate with the smallest residuals seen.
            best_x_blocks: Primal iterate matching best_y.
            residuals: Gap and infeasibility norms of the best iterate.
        """

        super().__init__(self._MESSAGE.format(additional_information))
        self.best_y = best_y
        self.best_x_blocks = best_x_blocks
        self.residuals = residuals or {}


class InfeasibleOptimizerError(SdpError):
    """Error raised when the recovered optimizer violates 0 <= F <= C beyond tolerance."""

    _MESSAGE = 'Recovered optimizer is infeasible: {}'

    def __init__(self, additional_information: str) -> None:
        """Creates an instance of InfeasibleOptimizerError.

        Args:
            additional_information: Additional information about the error.
        """

        super().__init__(self._MESSAGE.format(additional_information))
