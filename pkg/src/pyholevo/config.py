"""Module that contains Configuration related classes
"""

import os
from typing import Dict, Optional, Union, cast
from pyholevo.exceptions import ArgumentError


_HOLEVO_SOLVER_TOL = 'HOLEVO_SOLVER_TOL'
_HOLEVO_MAX_ITERATIONS = 'HOLEVO_MAX_ITERATIONS'
_HOLEVO_WORKERS = 'HOLEVO_WORKERS'

DEFAULT_SOLVER_TOL = 1e-9
DEFAULT_MAX_ITERATIONS = 200

_RawValue = Union[str, int, float, None]


class Config:
    """Represents the numerical configuration used by solvers and sweeps.

    Attributes:
        solver_tol (float): Absolute duality gap at which the SDP solver stops.
        max_iterations (int): Iteration limit of the SDP solver.
        workers (int): Number of threads used by sweeps and simulations.
    """

    def __init__(self, solver_tol: float, max_iterations: int, workers: int) -> None:
        """Initializes the Config class.

        Args:
            solver_tol: Absolute duality gap at which the SDP solver stops.
            max_iterations: Iteration limit of the SDP solver.
            workers: Number of threads used by sweeps and simulations.
        """
        self.solver_tol = solver_tol
        self.max_iterations = max_iterations
        self.workers = workers


class ConfigSetter:
    """Loads and validates configuration variables.

    Precedence, lowest first: built-in defaults, the HOLEVO_SOLVER_TOL,
    HOLEVO_MAX_ITERATIONS and HOLEVO_WORKERS environment variables, then the
    arguments passed to the constructor.
    """

    def __init__(
        self,
        solver_tol: Optional[float] = None,
        max_iterations: Optional[int] = None,
        workers: Optional[int] = None,
    ) -> None:
        """Initializes the ConfigSetter class.

        Args:
            solver_tol: Overrides the solver tolerance.
            max_iterations: Overrides the solver iteration limit.
            workers: Overrides the number of worker threads.

        Raises:
            ArgumentError: If any configuration variable has an invalid format.
        """
        self._apply_default_config()
        self._apply_environment_variables()

        if solver_tol is not None:
            self._raw_config[_HOLEVO_SOLVER_TOL] = solver_tol
        if max_iterations is not None:
            self._raw_config[_HOLEVO_MAX_ITERATIONS] = max_iterations
        if workers is not None:
            self._raw_config[_HOLEVO_WORKERS] = workers

        self._validate()
        self._config = Config(
            solver_tol=cast(float, self._raw_config[_HOLEVO_SOLVER_TOL]),
            max_iterations=cast(int, self._raw_config[_HOLEVO_MAX_ITERATIONS]),
            workers=cast(int, self._raw_config[_HOLEVO_WORKERS]),
        )

    def get_config(self) -> Config:
        return self._config

    def _apply_default_config(self) -> None:
        self._raw_config: Dict[str, _RawValue] = {
            _HOLEVO_SOLVER_TOL: DEFAULT_SOLVER_TOL,
            _HOLEVO_MAX_ITERATIONS: DEFAULT_MAX_ITERATIONS,
            _HOLEVO_WORKERS: os.cpu_count() or 1,
        }

    def _apply_environment_variables(self) -> None:
        for name in (_HOLEVO_SOLVER_TOL, _HOLEVO_MAX_ITERATIONS, _HOLEVO_WORKERS):
            value = os.environ.get(name)
            if value:
                self._raw_config[name] = value

    def _validate(self) -> None:
        tol = self._parse_float('Solver tolerance', self._raw_config[_HOLEVO_SOLVER_TOL])
        if not 0.0 < tol < 1.0:
            raise ArgumentError('Solver tolerance: value must be in (0, 1)')
        self._raw_config[_HOLEVO_SOLVER_TOL] = tol

        self._raw_config[_HOLEVO_MAX_ITERATIONS] = self._parse_positive_int(
            'Max iterations', self._raw_config[_HOLEVO_MAX_ITERATIONS]
        )
        self._raw_config[_HOLEVO_WORKERS] = self._parse_positive_int(
            'Workers', self._raw_config[_HOLEVO_WORKERS]
        )

    @classmethod
    def _parse_float(cls, setting: str, value: _RawValue) -> float:
        try:
            return float(cast(Union[str, float], value))
        except (TypeError, ValueError):
            raise ArgumentError('{}: value must be a number'.format(setting))

    @classmethod
    def _parse_positive_int(cls, setting: str, value: _RawValue) -> int:
        if isinstance(value, float) and not value.is_integer():
            raise ArgumentError('{}: value must be an integer'.format(setting))
        try:
            parsed = int(cast(Union[str, int], value))
        except (TypeError, ValueError):
            raise ArgumentError('{}: value must be an integer'.format(setting))
        if parsed < 1:
            raise ArgumentError('{}: value must be positive'.format(setting))
        return parsed
