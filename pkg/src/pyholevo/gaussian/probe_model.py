"""
This module manages ProbeModel objects.
"""

import json
import math
from typing import Any, Dict

import numpy as np
import scipy.linalg

from pyholevo.exceptions import ArgumentError, NumericalError
from pyholevo.gaussian import errors
from pyholevo.gaussian.exceptions import (
    InvalidStateError,
    ParseProbeError,
    UnidentifiableParameterError,
)
from pyholevo.gaussian.symplectic import symplectic_matrix
from pyholevo.utils.file_utils import load_text_from_file, write_text_to_file


ORDERING = 'yx-interleaved'
VACUUM_VARIANCE = 0.5
SYMMETRY_TOL = 1e-12
QUANTUM_TOL = 1e-10


class ProbeModel(object):
    """Represents an n-mode Gaussian probe whose mean is displaced by l parameters.

    The covariance ``A`` is the matrix of the correlation function alpha in the
    interleaved coordinates ``(y1, x1, ..., yn, xn)``, in units where
    ``[Q, P] = i`` and the vacuum variance is 1/2. Row ``j`` of the mean
    coefficients holds ``c_j`` with ``m_j(z) = c_j^T z``.
    """

    def __init__(self, covariance: np.ndarray, mean_coeffs: np.ndarray) -> None:
        """Creates a ProbeModel instance.

        Args:
            covariance: Real symmetric 2n x 2n covariance matrix.
            mean_coeffs: Real l x 2n matrix of mean coefficient rows.

        Raises:
            InvalidStateError: When the covariance is malformed or is not a valid quantum covariance.
            UnidentifiableParameterError: When the mean coefficients are not of full row rank.
            ArgumentError: When the mean coefficients have the wrong shape.
        """

        self._covariance = validate_covariance(covariance)
        self._mean_coeffs = _validate_mean_coeffs(
            mean_coeffs, self._covariance.shape[0]
        )
        self._covariance.flags.writeable = False
        self._mean_coeffs.flags.writeable = False

    def n_modes(self) -> int:
        """Returns the number of bosonic modes n."""
        return self._covariance.shape[0] // 2

    def n_params(self) -> int:
        """Returns the number of displacement parameters l."""
        return self._mean_coeffs.shape[0]

    def covariance(self) -> np.ndarray:
        """Returns a copy of the covariance matrix A."""
        return self._covariance.copy()

    def mean_coeffs(self) -> np.ndarray:
        """Returns a copy of the l x 2n mean coefficient matrix."""
        return self._mean_coeffs.copy()

    def correlation(self, z: np.ndarray, z_prime: np.ndarray) -> float:
        """Evaluates the correlation function alpha(z, z') = z^T A z'."""
        z = np.asarray(z, dtype=float)
        return float(z @ self._covariance @ np.asarray(z_prime, dtype=float))

    def tensor_vacuum(self, extra_modes: int) -> 'ProbeModel':
        """Returns this probe with ``extra_modes`` vacuum modes appended.

        The new modes carry no parameter dependence, so every mean coefficient
        row is padded with zeros.
        """
        if int(extra_modes) != extra_modes or extra_modes < 0:
            raise ArgumentError('Number of extra modes must be a non-negative integer')
        extra = 2 * int(extra_modes)
        covariance = scipy.linalg.block_diag(
            self._covariance, VACUUM_VARIANCE * np.eye(extra)
        )
        mean_coeffs = np.hstack([self._mean_coeffs, np.zeros((self.n_params(), extra))])
        return ProbeModel(covariance, mean_coeffs)

    def to_dict(self) -> Dict[str, Any]:
        """Returns the JSON probe representation as a dictionary."""
        return {
            'modes': self.n_modes(),
            'params': self.n_params(),
            'ordering': ORDERING,
            'covariance': self._covariance.tolist(),
            'mean_coeffs': self._mean_coeffs.tolist(),
        }

    @classmethod
    def parse(cls, probe_json: str) -> 'ProbeModel':
        """Parses a ProbeModel from its JSON representation.

        Args:
            probe_json: JSON text with the keys ``modes``, ``params``,
                ``ordering``, ``covariance`` and ``mean_coeffs``.

        Returns:
            An instance of ProbeModel.

        Raises:
            ParseProbeError: In case the JSON is malformed or inconsistent.
            InvalidStateError: In case the covariance is not a valid quantum covariance.
        """

        try:
            data = json.loads(probe_json)
        except ValueError as err:
            raise ParseProbeError('invalid JSON: {}'.format(str(err)))

        if not isinstance(data, dict):
            raise ParseProbeError('top level value must be an object')

        missing = [
            key
            for key in ('modes', 'params', 'covariance', 'mean_coeffs')
            if key not in data
        ]
        if missing:
            raise ParseProbeError('missing key(s) {}'.format(', '.join(missing)))

        ordering = data.get('ordering', ORDERING)
        if ordering != ORDERING:
            raise ParseProbeError(errors.ORDERING)

        try:
            covariance = np.array(data['covariance'], dtype=float)
            mean_coeffs = np.array(data['mean_coeffs'], dtype=float)
        except (TypeError, ValueError) as err:
            raise ParseProbeError('matrices must be numeric arrays: {}'.format(str(err)))

        modes, params = data['modes'], data['params']
        for key, value in (('modes', modes), ('params', params)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ParseProbeError('{} must be a positive integer'.format(key))

        if covariance.ndim != 2 or covariance.shape != (2 * modes, 2 * modes):
            raise ParseProbeError(
                'covariance shape {} does not match modes={}'.format(
                    covariance.shape, modes
                )
            )
        if mean_coeffs.ndim != 2 or mean_coeffs.shape != (params, 2 * modes):
            raise ParseProbeError(
                'mean_coeffs shape {} does not match params={} and modes={}'.format(
                    mean_coeffs.shape, params, modes
                )
            )

        return ProbeModel(covariance, mean_coeffs)

    @classmethod
    def load(cls, probe_file_path: str) -> 'ProbeModel':
        """Loads a ProbeModel from a JSON file on disk.

        Args:
            probe_file_path: Path to the JSON probe file.

        Returns:
            An instance of ProbeModel.

        Raises:
            LoadFileError: In case the file cannot be read.
            ParseProbeError: In case the file content cannot be parsed.
        """

        probe_json = load_text_from_file(probe_file_path)
        return ProbeModel.parse(probe_json)

    def save(self, probe_file_path: str) -> None:
        """Saves the probe as a JSON file on disk.

        Args:
            probe_file_path: Path to the file the probe will be written to.

        Raises:
            StoreFileError: In case the file cannot be written.
        """

        write_text_to_file(probe_file_path, json.dumps(self.to_dict(), indent=2))

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, ProbeModel):
            return False
        return np.array_equal(self._covariance, o._covariance) and np.array_equal(
            self._mean_coeffs, o._mean_coeffs
        )

    def __hash__(self) -> int:
        return hash((self._covariance.tobytes(), self._mean_coeffs.tobytes()))

    def __repr__(self) -> str:
        return 'ProbeModel(n_modes={}, n_params={})'.format(
            self.n_modes(), self.n_params()
        )


def validate_covariance(covariance: np.ndarray) -> np.ndarray:
    """Validates a quantum covariance matrix and returns it as a symmetric float array.

    Raises:
        InvalidStateError: If the matrix is not square of even size, not finite,
            not symmetric, or if ``A + (i/2) Omega`` has an eigenvalue below -1e-10.
    """
    try:
        matrix = np.array(covariance, dtype=float)
    except (TypeError, ValueError):
        raise InvalidStateError(errors.COVARIANCE_NOT_FINITE)

    if matrix.ndim != 2 or matrix.size == 0:
        raise InvalidStateError(errors.COVARIANCE_NOT_SQUARE)
    if matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2:
        raise InvalidStateError(errors.COVARIANCE_NOT_SQUARE)
    if not np.all(np.isfinite(matrix)):
        raise InvalidStateError(errors.COVARIANCE_NOT_FINITE)

    scale = max(1.0, float(np.max(np.abs(matrix))))
    if np.max(np.abs(matrix - matrix.T)) > SYMMETRY_TOL * scale:
        raise InvalidStateError(errors.COVARIANCE_NOT_SYMMETRIC)
    matrix = 0.5 * (matrix + matrix.T)

    smallest = _smallest_quantum_eigenvalue(matrix)
    if smallest < -QUANTUM_TOL:
        raise InvalidStateError(errors.COVARIANCE_NOT_QUANTUM.format(smallest))
    return matrix


def is_valid_covariance(covariance: np.ndarray) -> bool:
    """Checks whether a matrix is a valid quantum covariance, see :func:`validate_covariance`."""
    try:
        validate_covariance(covariance)
    except InvalidStateError:
        return False
    return True


def symmetric_tmst_probe(v: float, r: float) -> ProbeModel:
    """Builds the decoupled symmetric two-mode squeezed thermal probe.

    The two thermal modes of variance ``v`` are squeezed with parameter ``r``
    and interfered on a 50:50 beam splitter, which leaves the diagonal
    covariance ``v diag(e^-2r, e^2r, e^2r, e^-2r)``. The displacement acts on
    the first input mode, giving mean coefficient rows ``(1, 0, -1, 0)/sqrt(2)``
    and ``(0, 1, 0, -1)/sqrt(2)``.

    Args:
        v: Thermal variance, at least 1/2 (1/2 is the vacuum).
        r: Squeezing parameter, non-negative.

    Returns:
        The probe model.

    Raises:
        InvalidStateError: If v < 1/2.
        ArgumentError: If r < 0.

    Examples:
        >>> symmetric_tmst_probe(0.5, 0.0).covariance().diagonal().tolist()
        [0.5, 0.5, 0.5, 0.5]
    """
    check_tmst_parameters(v, r)
    squeeze, stretch = math.exp(-2.0 * r), math.exp(2.0 * r)
    covariance = v * np.diag([squeeze, stretch, stretch, squeeze])
    mean_coeffs = np.array([[1.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, -1.0]]) / math.sqrt(2.0)
    return ProbeModel(covariance, mean_coeffs)


def check_tmst_parameters(v: float, r: float) -> None:
    """Validates the (v, r) pair of a symmetric two-mode squeezed thermal probe."""
    if not (math.isfinite(v) and v >= VACUUM_VARIANCE):
        raise InvalidStateError(errors.VARIANCE_BELOW_VACUUM)
    if not (math.isfinite(r) and r >= 0.0):
        raise ArgumentError(errors.NEGATIVE_SQUEEZING)


def riesz_vector(coeff: np.ndarray, model: ProbeModel) -> np.ndarray:
    """Returns the vector representing the functional ``z -> coeff^T z`` in the alpha inner product.

    That is ``A^-1 coeff``, so that ``alpha(riesz_vector(c), z) = c^T z``.

    Args:
        coeff: A real 2n-vector.
        model: The probe whose covariance defines the inner product.

    Returns:
        The representing vector.

    Raises:
        ArgumentError: If the length of coeff does not match the probe.
        NumericalError: If the covariance is singular.
    """
    coeff = np.asarray(coeff, dtype=float)
    covariance = model.covariance()
    if coeff.shape != (covariance.shape[0],):
        raise ArgumentError(errors.VECTOR_LENGTH)
    try:
        return scipy.linalg.solve(covariance, coeff, assume_a='sym')
    except (scipy.linalg.LinAlgError, ValueError) as err:
        raise NumericalError('Covariance is singular: {}'.format(str(err)))


def _smallest_quantum_eigenvalue(covariance: np.ndarray) -> float:
    omega = symplectic_matrix(covariance.shape[0] // 2)
    return float(scipy.linalg.eigvalsh(covariance + 0.5j * omega)[0])


def _validate_mean_coeffs(mean_coeffs: np.ndarray, dimension: int) -> np.ndarray:
    try:
        coeffs = np.array(mean_coeffs, dtype=float)
    except (TypeError, ValueError):
        raise ArgumentError(errors.COEFFS_NOT_FINITE)

    if coeffs.ndim != 2 or coeffs.shape[1] != dimension or coeffs.shape[0] == 0:
        raise ArgumentError(errors.COEFFS_SHAPE.format(dimension))
    if not np.all(np.isfinite(coeffs)):
        raise ArgumentError(errors.COEFFS_NOT_FINITE)
    if np.linalg.matrix_rank(coeffs) < coeffs.shape[0]:
        raise UnidentifiableParameterError(errors.COEFFS_RANK)
    return coeffs
