"""
Symplectic optics on phase-space coordinates ordered ``(Q_1, P_1, Q_2, P_2, ...)``.
"""

import math
from typing import Optional, Tuple

import numpy as np

from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian.probe_model import check_tmst_parameters


def beam_splitter_symplectic(
    t: float, mode_a: int, mode_b: int, n_modes: Optional[int] = None
) -> np.ndarray:
    """Returns the symplectic matrix of a beam splitter with intensity transmission t.

    ``(Q_a, P_a) -> sqrt(t)(Q_a, P_a) + sqrt(1-t)(Q_b, P_b)`` and
    ``(Q_b, P_b) -> -sqrt(1-t)(Q_a, P_a) + sqrt(t)(Q_b, P_b)``; all other
    modes pass unchanged.

    Args:
        t: Transmission in [0, 1].
        mode_a: First mode index.
        mode_b: Second mode index.
        n_modes: Total number of modes, at least ``max(mode_a, mode_b) + 1`` (the default).

    Raises:
        ArgumentError: If t is outside [0, 1] or the mode indices are invalid.

    Examples:
        >>> beam_splitter_symplectic(1.0, 0, 1).tolist() == np.eye(4).tolist()
        True
    """
    if not (math.isfinite(t) and 0.0 <= t <= 1.0):
        raise ArgumentError('Beam splitter transmission must be in [0, 1]')
    if n_modes is None:
        n_modes = max(mode_a, mode_b) + 1
    if mode_a == mode_b or min(mode_a, mode_b) < 0 or max(mode_a, mode_b) >= n_modes:
        raise ArgumentError(
            'Beam splitter needs two distinct modes in [0, {}), got {} and {}'.format(
                n_modes, mode_a, mode_b
            )
        )

    transmitted, reflected = math.sqrt(t), math.sqrt(1.0 - t)
    symplectic = np.eye(2 * n_modes)
    for offset in (0, 1):
        a, b = 2 * mode_a + offset, 2 * mode_b + offset
        symplectic[a, a] = transmitted
        symplectic[a, b] = reflected
        symplectic[b, a] = -reflected
        symplectic[b, b] = transmitted
    return symplectic


def tmst_covariance(v: float, r: float) -> np.ndarray:
    """Returns the covariance of the two-mode squeezed thermal state before any beam splitter.

    Each quadrature has variance ``v cosh 2r``; ``Cov(Q_1, Q_2) = -v sinh 2r``
    and ``Cov(P_1, P_2) = v sinh 2r``.
    """
    check_tmst_parameters(v, r)
    c, s = v * math.cosh(2.0 * r), v * math.sinh(2.0 * r)
    return np.array(
        [
            [c, 0.0, -s, 0.0],
            [0.0, c, 0.0, s],
            [-s, 0.0, c, 0.0],
            [0.0, s, 0.0, c],
        ]
    )


def propagate(
    symplectic: np.ndarray, covariance: np.ndarray, mean: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Applies a Gaussian unitary: returns ``(S A S^T, S mean)``."""
    symplectic = np.asarray(symplectic, dtype=float)
    covariance = np.asarray(covariance, dtype=float)
    mean = np.asarray(mean, dtype=float)
    if symplectic.shape != covariance.shape or symplectic.shape[1] != mean.shape[0]:
        raise ArgumentError(
            'Cannot propagate a state of dimension {} through a {} transform'.format(
                covariance.shape, symplectic.shape
            )
        )
    transformed = symplectic @ covariance @ symplectic.T
    return 0.5 * (transformed + transformed.T), symplectic @ mean
