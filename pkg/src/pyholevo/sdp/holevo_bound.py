"""
Holevo Cramer-Rao bound of a Gaussian displacement model.

The bound is ``min Tr (M F M^T)^-1`` over real symmetric ``F`` with
``0 <= F <= C``. It is computed as the optimum of the SDP of
:mod:`pyholevo.sdp.problem`.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from pyholevo.gaussian.euclidean_frame import (
    CHOLESKY_BASIS,
    BasisChoice,
    EuclideanFrame,
    orthonormal_frame,
)
from pyholevo.gaussian.probe_model import ProbeModel
from pyholevo.sdp.certificate import (
    DEFAULT_CERTIFICATE_TOL,
    CertificateReport,
    verify_certificate,
)
from pyholevo.sdp.exceptions import InfeasibleOptimizerError
from pyholevo.sdp.problem import SdpProblem, build_sdp, symmetric_basis
from pyholevo.sdp.solver import (
    STALLED_FEASIBILITY_TOL,
    STATUS_STALLED,
    SdpSolution,
    solve,
)
from pyholevo.utils.linalg import checked_inverse, min_eigenvalue, realify

_logger = logging.getLogger(__name__)

OPTIMIZER_FEASIBILITY_TOL = 1e-8
TRACE_CONSISTENCY_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class BoundResult:
    """Holevo bound with its optimizer and certificate.

    Attributes:
        sigma_star: The bound.
        f_opt: Optimal ``F`` in the frame basis.
        f_reduced: ``M F M^T``.
        certificate: The solver's primal-dual pair.
        report: Independent check of the certificate.
        problem: The SDP that was solved.
    """

    sigma_star: float
    f_opt: np.ndarray
    f_reduced: np.ndarray
    certificate: SdpSolution
    report: CertificateReport
    problem: SdpProblem


def holevo_bound(
    frame: EuclideanFrame, tol: Optional[float] = None, max_iterations: Optional[int] = None
) -> BoundResult:
    """Computes the Holevo bound of a frame.

    Args:
        frame: The probe in an orthonormal basis.
        tol: Absolute duality gap tolerance, see :func:`pyholevo.sdp.solver.solve`.
        max_iterations: Solver iteration limit.

    Returns:
        A BoundResult.

    Raises:
        ConvergenceError: If the solver does not converge.
        InfeasibleOptimizerError: If the recovered F violates 0 <= F <= C by more than 1e-8.
    """
    problem = build_sdp(frame)
    solution = solve(problem, tol=tol, max_iterations=max_iterations)

    f_basis = symmetric_basis(frame.dimension())
    f_opt = np.tensordot(solution.y[: problem.n_f_coordinates], np.array(f_basis), axes=1)
    _check_feasible(frame, f_opt)

    m_mat = frame.m_mat()
    f_reduced = m_mat @ f_opt @ m_mat.T
    sigma_star = solution.dual_value

    trace = float(np.trace(checked_inverse(f_reduced, 'Reduced optimizer F*')))
    if abs(trace - sigma_star) > TRACE_CONSISTENCY_TOL:
        _logger.warning(
            'Tr (F*)^-1 = {:.12g} differs from the bound {:.12g}'.format(trace, sigma_star)
        )

    report_tol = max(DEFAULT_CERTIFICATE_TOL, tol or 0.0)
    if solution.status == STATUS_STALLED:
        report_tol = max(report_tol, STALLED_FEASIBILITY_TOL)
    report = verify_certificate(problem, solution.x_blocks, solution.y, tol=report_tol)
    return BoundResult(
        sigma_star=sigma_star,
        f_opt=f_opt,
        f_reduced=f_reduced,
        certificate=solution,
        report=report,
        problem=problem,
    )


def holevo_bound_of(
    model: ProbeModel, basis: BasisChoice = CHOLESKY_BASIS, tol: Optional[float] = None
) -> BoundResult:
    """Computes the Holevo bound of a probe in the chosen basis."""
    return holevo_bound(orthonormal_frame(model, basis), tol=tol)


def constraint_margins(frame: EuclideanFrame, f_mat: np.ndarray) -> Tuple[float, float]:
    """Returns the smallest eigenvalues of ``F`` and of ``C - F``.

    ``C - F`` is checked through its real embedding, or on the range of
    ``I + (i/2) D`` when C does not exist.
    """
    lower = min_eigenvalue(f_mat)
    if frame.pure_directions():
        vectors, inverse_kappa = frame.c_range()
        upper = min_eigenvalue(np.diag(inverse_kappa) - vectors.conj().T @ f_mat @ vectors)
    else:
        upper = min_eigenvalue(realify(frame.c_mat() - f_mat))
    return lower, upper


def _check_feasible(frame: EuclideanFrame, f_opt: np.ndarray) -> None:
    lower, upper = constraint_margins(frame, f_opt)
    if lower < -OPTIMIZER_FEASIBILITY_TOL or upper < -OPTIMIZER_FEASIBILITY_TOL:
        raise InfeasibleOptimizerError(
            'min eig F = {:.3e}, min eig (C - F) = {:.3e}'.format(lower, upper)
        )
