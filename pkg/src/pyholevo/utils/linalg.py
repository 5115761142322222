"""
Dense linear algebra helpers shared by the bound and solver modules.
"""

import logging

import numpy as np
import scipy.linalg

from pyholevo.exceptions import ArgumentError, NumericalError

_logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
CONDITION_WARNING_LIMIT = 1e12


def is_hermitian(matrix: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    """Checks whether a square matrix equals its conjugate transpose.

    The tolerance is relative to the largest entry, with an absolute floor of ``tol``.
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(matrix), initial=0.0)))
    return bool(np.max(np.abs(matrix - matrix.conj().T), initial=0.0) <= tol * scale)


def realify(hermitian: np.ndarray) -> np.ndarray:
    """Embeds a complex Hermitian matrix into a real symmetric matrix of twice the size.

    The embedding is ``[[Re H, -Im H], [Im H, Re H]]``. It preserves positive
    semidefiniteness in both directions and every eigenvalue of ``H`` appears
    twice in the embedded matrix.

    Args:
        hermitian: A complex Hermitian d x d matrix.

    Returns:
        The real symmetric 2d x 2d embedding.

    Raises:
        ArgumentError: If the input is not square or not Hermitian.

    Examples:
        >>> embedded = realify(np.array([[2.0, 1j], [-1j, 2.0]]))
        >>> embedded.shape
        (4, 4)
        >>> np.round(np.linalg.eigvalsh(embedded), 9).tolist()
        [1.0, 1.0, 3.0, 3.0]
    """
    hermitian = np.asarray(hermitian)
    if not is_hermitian(hermitian):
        raise ArgumentError('Matrix to realify must be square and Hermitian')
    real, imag = hermitian.real, hermitian.imag
    return np.block([[real, -imag], [imag, real]])


def realify_adjoint(embedded: np.ndarray) -> np.ndarray:
    """Folds a real symmetric 2d x 2d matrix back into a complex Hermitian d x d matrix.

    This is the adjoint of :func:`realify` under the trace inner product:
    ``Tr(realify(B) N) == Tr(B realify_adjoint(N))`` for every Hermitian ``B``.
    It maps positive semidefinite matrices to positive semidefinite matrices.
    """
    embedded = np.asarray(embedded, dtype=float)
    size = embedded.shape[0] // 2
    n11 = embedded[:size, :size]
    n12 = embedded[:size, size:]
    n21 = embedded[size:, :size]
    n22 = embedded[size:, size:]
    folded = (n11 + n22) + 1j * (n21 - n12)
    return 0.5 * (folded + folded.conj().T)


def min_eigenvalue(matrix: np.ndarray) -> float:
    """Returns the smallest eigenvalue of a real symmetric or complex Hermitian matrix."""
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return float('inf')
    hermitian = 0.5 * (matrix + matrix.conj().T)
    return float(scipy.linalg.eigvalsh(hermitian)[0])


def checked_inverse(matrix: np.ndarray, name: str) -> np.ndarray:
    """Inverts a square matrix through an explicit solve, warning when ill-conditioned.

    Args:
        matrix: The matrix to invert.
        name: Human readable name used in log and error messages.

    Returns:
        The inverse of ``matrix``.

    Raises:
        NumericalError: If the matrix is singular.
    """
    matrix = np.asarray(matrix)
    condition = np.linalg.cond(matrix)
    if not np.isfinite(condition):
        raise NumericalError('{} is singular'.format(name))
    if condition > CONDITION_WARNING_LIMIT:
        _logger.warning(
            '{} is ill-conditioned: condition number {:.3e}'.format(name, condition)
        )
    identity = np.eye(matrix.shape[0], dtype=matrix.dtype)
    try:
        return scipy.linalg.solve(matrix, identity)
    except (scipy.linalg.LinAlgError, ValueError) as err:
        raise NumericalError('{} could not be inverted: {}'.format(name, str(err)))
