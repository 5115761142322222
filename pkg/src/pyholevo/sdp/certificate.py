"""
Independent optimality check of an SDP primal-dual pair.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Sequence, Union

import numpy as np

from pyholevo.exceptions import ArgumentError
from pyholevo.sdp.problem import Blocks, SdpProblem
from pyholevo.utils.linalg import is_hermitian, min_eigenvalue

_logger = logging.getLogger(__name__)

DEFAULT_CERTIFICATE_TOL = 1e-9

VERDICT_OPTIMAL = 'optimal'
VERDICT_NOT_OPTIMAL = 'non-optimal'


@dataclass(frozen=True)
class CertificateReport:
    """Feasibility residuals and objective values of a candidate pair (X, y)."""

    min_eig_x: float
    min_eig_s: float
    max_residual: float
    primal_value: float
    dual_value: float
    gap: float
    tol: float
    verdict: str

    def is_optimal(self) -> bool:
        return self.verdict == VERDICT_OPTIMAL

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def verify_certificate(
    problem: SdpProblem,
    x: Union[np.ndarray, Sequence[np.ndarray]],
    y: np.ndarray,
    tol: float = DEFAULT_CERTIFICATE_TOL,
) -> CertificateReport:
    """Checks a candidate primal-dual pair in dense complex arithmetic.

    The pair is optimal when ``X >= 0``, ``sum_j y_j B_j - C >= 0`` and
    ``Tr(B_j X) = b_j`` all hold to ``tol`` and the duality gap
    ``b^T y - Tr(C X)`` is within ``tol`` of zero.

    Args:
        problem: The SDP.
        x: Either a dense Hermitian matrix of the full size or a sequence of blocks.
        y: Dual vector of length K.
        tol: Tolerance for every residual and for the gap.

    Returns:
        A CertificateReport.

    Raises:
        ArgumentError: If shapes do not match the problem or X is not Hermitian.
    """
    y = np.asarray(y, dtype=float)
    if y.shape != (problem.size(),):
        raise ArgumentError(
            'y must have length {}, got shape {}'.format(problem.size(), y.shape)
        )

    dense_x = _dense(problem, x)
    if not is_hermitian(dense_x):
        raise ArgumentError('X must be Hermitian')
    basis = [problem.dense_basis_matrix(j) for j in range(problem.size())]
    c_matrix = problem.dense_c_matrix()

    residuals = np.abs(np.array([_trace(b_j, dense_x) for b_j in basis]) - problem.b)
    primal_value = _trace(c_matrix, dense_x)
    dual_value = problem.dual_value(y)
    gap = dual_value - primal_value
    min_eig_x = min_eigenvalue(dense_x)
    min_eig_s = min_eigenvalue(sum(y_j * b_j for y_j, b_j in zip(y, basis)) - c_matrix)
    max_residual = float(np.max(residuals))

    optimal = (
        min_eig_x >= -tol
        and min_eig_s >= -tol
        and max_residual <= tol
        and abs(gap) <= tol
    )
    report = CertificateReport(
        min_eig_x=min_eig_x,
        min_eig_s=min_eig_s,
        max_residual=max_residual,
        primal_value=primal_value,
        dual_value=dual_value,
        gap=gap,
        tol=tol,
        verdict=VERDICT_OPTIMAL if optimal else VERDICT_NOT_OPTIMAL,
    )
    _logger.debug('Certificate check: {}'.format(report))
    return report


def _trace(left: np.ndarray, right: np.ndarray) -> float:
    return float(np.real(np.trace(left @ right)))


def _dense(problem: SdpProblem, x: Union[np.ndarray, Sequence[np.ndarray]]) -> np.ndarray:
    if isinstance(x, np.ndarray) and x.ndim == 2:
        dimension = problem.dimension()
        if x.shape != (dimension, dimension):
            raise ArgumentError(
                'X must be {0}x{0}, got shape {1}'.format(dimension, x.shape)
            )
        return x
    blocks: Blocks = tuple(np.asarray(block) for block in x)
    if tuple(block.shape for block in blocks) != tuple(
        (size, size) for size in problem.block_structure
    ):
        raise ArgumentError(
            'X blocks must have sizes {}'.format(list(problem.block_structure))
        )
    return problem.join_blocks(blocks)
