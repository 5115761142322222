"""
SLD and RLD Cramer-Rao bounds for displacement estimation with Gaussian probes.

For mean-only parameter dependence the Fisher matrices in an orthonormal
frame are ``G_S = M M^T`` and ``G_R = M C M^T``, with bounds
``C_S = Tr G_S^-1`` and ``C_R = Tr Re G_R^-1 + TrAbs Im G_R^-1``.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from pyholevo.bounds.exceptions import UndefinedBoundError
from pyholevo.gaussian.euclidean_frame import EuclideanFrame
from pyholevo.gaussian.exceptions import UnidentifiableParameterError
from pyholevo.gaussian import errors
from pyholevo.utils.linalg import checked_inverse, is_hermitian

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FisherResult:
    """SLD and RLD Fisher matrices and bounds of a probe.

    No ordering between ``c_sld`` and ``c_rld`` holds in general. When the
    probe has pure-state directions the RLD bound does not exist:
    ``g_rld`` is None and ``c_rld`` is NaN.
    """

    g_sld: np.ndarray
    g_rld: Optional[np.ndarray]
    c_sld: float
    c_rld: float


def trabs(matrix: np.ndarray) -> float:
    """Returns the sum of the absolute values of the eigenvalues of a square matrix.

    Examples:
        >>> round(trabs(np.array([[0.0, -0.3], [0.3, 0.0]])), 12)
        0.6
    """
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    if is_hermitian(matrix):
        eigenvalues = scipy.linalg.eigvalsh(matrix)
    elif np.isrealobj(matrix) and is_hermitian(1j * matrix):
        eigenvalues = scipy.linalg.eigvalsh(1j * matrix)
    else:
        eigenvalues = np.linalg.eigvals(matrix)
    return float(np.sum(np.abs(eigenvalues)))


def sld_bound(frame: EuclideanFrame) -> Tuple[np.ndarray, float]:
    """Returns the SLD Fisher matrix ``M M^T`` and the bound ``Tr (M M^T)^-1``.

    Raises:
        UnidentifiableParameterError: If M is not of full row rank.
    """
    m_mat = frame.m_mat()
    _check_rank(m_mat)
    g_sld = m_mat @ m_mat.T
    inverse = checked_inverse(g_sld, 'SLD Fisher matrix')
    return g_sld, float(np.trace(inverse))


def rld_bound(frame: EuclideanFrame) -> Tuple[np.ndarray, float]:
    """Returns the RLD Fisher matrix ``M C M^T`` and its bound.

    Raises:
        UnidentifiableParameterError: If M is not of full row rank.
        UndefinedBoundError: If C does not exist because the probe has pure-state directions.
    """
    m_mat = frame.m_mat()
    _check_rank(m_mat)
    pure = frame.pure_directions()
    if pure:
        raise UndefinedBoundError(
            'probe has {} pure-state direction(s), so (I + i/2 D)^-1 does not exist'.format(
                pure
            )
        )
    return rld_from_constraint(m_mat, frame.c_mat())


def rld_from_constraint(m_mat: np.ndarray, c_mat: np.ndarray) -> Tuple[np.ndarray, float]:
    """Evaluates the RLD Fisher matrix and bound for an explicit constraint matrix C."""
    g_rld = m_mat @ c_mat @ m_mat.T
    g_rld = 0.5 * (g_rld + g_rld.conj().T)
    inverse = checked_inverse(g_rld, 'RLD Fisher matrix')
    inverse = 0.5 * (inverse + inverse.conj().T)
    c_rld = float(np.trace(inverse.real)) + trabs(inverse.imag)
    return g_rld, c_rld


def fisher_bounds(frame: EuclideanFrame) -> FisherResult:
    """Computes both bounds; the RLD entries are None/NaN when the RLD bound is undefined."""
    g_sld, c_sld = sld_bound(frame)
    g_rld: Optional[np.ndarray] = None
    c_rld = math.nan
    try:
        g_rld, c_rld = rld_bound(frame)
    except UndefinedBoundError as err:
        _logger.info(str(err))
    return FisherResult(g_sld=g_sld, g_rld=g_rld, c_sld=c_sld, c_rld=c_rld)


def _check_rank(m_mat: np.ndarray) -> None:
    if np.linalg.matrix_rank(m_mat) < m_mat.shape[0]:
        raise UnidentifiableParameterError(errors.COEFFS_RANK)
