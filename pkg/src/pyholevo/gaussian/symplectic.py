"""
This module provides the symplectic structure of n-mode phase space.

Coordinates are interleaved per mode as ``(y1, x1, y2, x2, ..., yn, xn)``,
where ``y`` multiplies the Q quadrature and ``x`` the P quadrature.
"""

import numpy as np

from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian import errors

_MODE_BLOCK = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_matrix(n_modes: int) -> np.ndarray:
    """Returns the 2n x 2n symplectic matrix Omega.

    Omega is block diagonal with one ``[[0, 1], [-1, 0]]`` block per mode, so
    that ``Omega^T = -Omega`` and ``Omega^2 = -I``.

    Args:
        n_modes: Number of bosonic modes.

    Returns:
        The symplectic matrix as a float array.

    Raises:
        ArgumentError: If n_modes is not a positive integer.

    Examples:
        >>> symplectic_matrix(1)
        array([[ 0.,  1.],
               [-1.,  0.]])
    """
    if int(n_modes) != n_modes or n_modes < 1:
        raise ArgumentError('Number of modes must be a positive integer')
    return np.kron(np.eye(int(n_modes)), _MODE_BLOCK)


def symplectic_form(z: np.ndarray, z_prime: np.ndarray) -> float:
    """Evaluates the skew-symmetric form Delta(z, z') = z^T Omega z'.

    Equivalently ``sum_j x'_j y_j - x_j y'_j`` over the modes.

    Args:
        z: A real 2n-vector in interleaved ordering.
        z_prime: A real 2n-vector in interleaved ordering.

    Returns:
        The value of the form.

    Raises:
        ArgumentError: If the vectors differ in length or the length is odd.

    Examples:
        >>> symplectic_form([1, 0, 0, 0], [0, 1, 0, 0])
        1.0
    """
    z = np.asarray(z, dtype=float)
    z_prime = np.asarray(z_prime, dtype=float)
    if z.ndim != 1 or z.shape != z_prime.shape or z.size % 2 or z.size == 0:
        raise ArgumentError(errors.VECTOR_LENGTH)
    y, x = z[0::2], z[1::2]
    y_prime, x_prime = z_prime[0::2], z_prime[1::2]
    return float(np.dot(x_prime, y) - np.dot(x, y_prime))
