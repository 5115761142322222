"""
Linear Gaussian measurement plans: extraction from an optimizer, achieved MSE and optical circuits.

A plan estimates parameter ``j`` by the quadrature observable ``R(z_j)``.
For a Gaussian probe its noise matrix is ``Z_jk = alpha(z_j, z_k) + (i/2) Delta(z_j, z_k)``
and the sum of MSE reached by the joint measurement is
``Tr Re Z + TrAbs Im Z``.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
import scipy.linalg
import scipy.optimize

from pyholevo.bounds.fisher_bounds import trabs
from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian.euclidean_frame import EuclideanFrame
from pyholevo.gaussian.probe_model import ProbeModel, symmetric_tmst_probe
from pyholevo.gaussian.symplectic import symplectic_matrix
from pyholevo.measurement.exceptions import BiasedPlanError, DegenerateOptimizerError

_logger = logging.getLogger(__name__)

DOUBLE_HOMODYNE = 'double_homodyne'
DOUBLE_UNBALANCED_HETERODYNE = 'double_unbalanced_heterodyne'

UNBIASED_TOL = 1e-9
CIRCUIT_MATCH_TOL = 1e-8
DEGENERATE_TOL = 1e-12
# Largest increase of the Holevo functional accepted from the exact estimator minimization.
REFINE_TOL = 1e-10


@dataclass(frozen=True)
class CircuitDescriptor:
    """Optical realization of a two-parameter plan.

    ``feasible`` is False when the matched transmission leaves (0, 1].
    """

    type: str
    t: float
    feasible: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.type, 't': self.t, 'feasible': self.feasible}


@dataclass(frozen=True)
class AchievedMse:
    """Sum of MSE of a plan and its two contributions."""

    total: float
    trace_real: float
    trabs_imag: float


@dataclass(frozen=True, eq=False)
class MeasurementPlan:
    """Estimator vectors of a joint linear Gaussian measurement.

    Attributes:
        z_vectors: l x 2n matrix; row j is ``z_j`` in phase-space coordinates.
        commutators: ``K_jk = Delta(z_j, z_k)``.
        achieved_mse: Sum of MSE on the probe the plan was built for, if known.
        circuit: Optical circuit, if the plan belongs to the symmetric two-mode family.
    """

    z_vectors: np.ndarray
    commutators: np.ndarray
    achieved_mse: Optional[float] = None
    circuit: Optional[CircuitDescriptor] = None

    def is_commuting(self, tol: float = UNBIASED_TOL) -> bool:
        return bool(np.max(np.abs(self.commutators)) <= tol)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'z_vectors': self.z_vectors.tolist(),
            't': self.circuit.t if self.circuit else None,
            'type': self.circuit.type if self.circuit else None,
            'achieved_mse': self.achieved_mse,
        }


def optimal_directions(frame: EuclideanFrame, f_opt: np.ndarray) -> np.ndarray:
    """Returns the phase-space coordinates of ``F m_j`` as the columns of ``E F M^T``."""
    return frame.basis() @ np.asarray(f_opt, dtype=float) @ frame.m_mat().T


def extract_plan(frame: EuclideanFrame, f_opt: np.ndarray, refine: bool = True) -> MeasurementPlan:
    """Extracts the estimator vectors ``z* = E F M^T (M F M^T)^-1`` from an optimizer.

    With ``refine`` and at most two parameters, the estimators are replaced
    by the exact minimizer of the Holevo functional over unbiased estimators,
    which the optimizer only determines to the accuracy of the solver. The
    minimizer is unique, so the refined plan does not depend on which
    optimal ``F`` the solver returned.

    Args:
        frame: The probe in an orthonormal basis.
        f_opt: A feasible F, typically the optimizer of the bound SDP.
        refine: Whether to refine the estimators when the probe has at most two parameters.

    Returns:
        The plan with its achieved MSE and circuit descriptor.

    Raises:
        DegenerateOptimizerError: If ``M F M^T`` is singular.
    """
    f_opt = np.asarray(f_opt, dtype=float)
    m_mat = frame.m_mat()
    f_reduced = m_mat @ f_opt @ m_mat.T
    eigenvalues = scipy.linalg.eigvalsh(f_reduced)
    if eigenvalues[0] <= DEGENERATE_TOL * max(abs(eigenvalues[-1]), 1.0):
        raise DegenerateOptimizerError(
            'M F M^T has smallest eigenvalue {:.3e}'.format(eigenvalues[0])
        )

    # W holds the z* columns in frame coordinates: alpha becomes W^T W and Delta W^T D W.
    w_mat = f_opt @ m_mat.T @ scipy.linalg.inv(f_reduced)
    if refine and frame.n_params() <= 2:
        w_mat = _refined_estimators(frame, w_mat)
    z_vectors = (frame.basis() @ w_mat).T
    commutators = _commutators(frame, w_mat)
    mse = _holevo_functional(w_mat.T @ w_mat, commutators)

    _logger.debug('Extracted plan with achieved MSE {:.12g}'.format(mse.total))
    return MeasurementPlan(
        z_vectors=z_vectors,
        commutators=commutators,
        achieved_mse=mse.total,
        circuit=circuit_params(MeasurementPlan(z_vectors, commutators)),
    )


def plan_from_vectors(z_vectors: np.ndarray) -> MeasurementPlan:
    """Wraps raw estimator vectors into a plan, computing their commutators."""
    z_vectors = np.atleast_2d(np.asarray(z_vectors, dtype=float))
    omega = symplectic_matrix(z_vectors.shape[1] // 2)
    commutators = _antisymmetrize(z_vectors @ omega @ z_vectors.T)
    return MeasurementPlan(z_vectors=z_vectors, commutators=commutators)


def achieved_mse(plan: MeasurementPlan, model: ProbeModel) -> AchievedMse:
    """Evaluates ``Tr Re Z + TrAbs Im Z`` of a plan on a probe.

    For commuting plans the second term vanishes and the result is the
    classical variance sum of the outputs.

    Raises:
        BiasedPlanError: If ``c_j^T z_k`` differs from ``delta_jk`` by more than 1e-9.
    """
    z_vectors = plan.z_vectors
    coeffs = model.mean_coeffs()
    if z_vectors.shape != coeffs.shape:
        raise BiasedPlanError(
            'plan has shape {}, probe expects {}'.format(z_vectors.shape, coeffs.shape)
        )
    deviation = float(np.max(np.abs(coeffs @ z_vectors.T - np.eye(coeffs.shape[0]))))
    if deviation > UNBIASED_TOL:
        raise BiasedPlanError('max |c_j^T z_k - delta_jk| = {:.3e}'.format(deviation))

    alpha = z_vectors @ model.covariance() @ z_vectors.T
    return _holevo_functional(alpha, plan.commutators)


def circuit_params(plan: MeasurementPlan) -> Optional[CircuitDescriptor]:
    """Matches a plan against ``sqrt(2)(t, 0, t-1, 0)``, ``sqrt(2)(0, 1-t, 0, -t)``.

    Returns:
        ``double_homodyne`` when t = 1, ``double_unbalanced_heterodyne``
        otherwise, flagged infeasible outside (0, 1]. None if the plan does
        not have this shape.
    """
    if plan.z_vectors.shape != (2, 4):
        return None
    t = plan.z_vectors[0, 0] / math.sqrt(2.0)
    expected = math.sqrt(2.0) * np.array(
        [[t, 0.0, t - 1.0, 0.0], [0.0, 1.0 - t, 0.0, -t]]
    )
    if np.max(np.abs(plan.z_vectors - expected)) > CIRCUIT_MATCH_TOL:
        return None
    if abs(t - 1.0) <= CIRCUIT_MATCH_TOL:
        return CircuitDescriptor(type=DOUBLE_HOMODYNE, t=1.0)
    feasible = 0.0 < t < 1.0
    if not feasible:
        _logger.info('Matched transmission t = {:.6g} has no passive realization'.format(t))
    return CircuitDescriptor(type=DOUBLE_UNBALANCED_HETERODYNE, t=float(t), feasible=feasible)


def heterodyne_plan(v: float, r: float, t: float) -> MeasurementPlan:
    """Returns the double-unbalanced-heterodyne plan with transmission t on the symmetric probe.

    ``t = 1`` is the double-homodyne plan.

    Examples:
        >>> plan = heterodyne_plan(0.75, 0.5, 1.0)
        >>> round(plan.achieved_mse, 7)
        1.1036383
        >>> plan.circuit.type
        'double_homodyne'
    """
    root = math.sqrt(2.0)
    plan = plan_from_vectors(
        root * np.array([[t, 0.0, t - 1.0, 0.0], [0.0, 1.0 - t, 0.0, -t]])
    )
    mse = achieved_mse(plan, symmetric_tmst_probe(v, r))
    return MeasurementPlan(
        z_vectors=plan.z_vectors,
        commutators=plan.commutators,
        achieved_mse=mse.total,
        circuit=circuit_params(plan),
    )

def minimal_estimators(frame: EuclideanFrame) -> np.ndarray:
    """Returns the unbiased W minimizing the Holevo functional of a one or two parameter frame.

    In frame coordinates the functional is ``|w_1|^2 + |w_2|^2 + |w_1^T D w_2|``
    subject to ``M W = I``. It is the largest of the two convex branches
    ``|W|^2 +- w_1^T D w_2``, so its minimum is the largest over
    ``mu in [-1, 1]`` of ``min |W|^2 + mu w_1^T D w_2``, whose derivative in
    ``mu`` is the commutator ``w_1^T D w_2`` of the inner minimizer. The
    optimal ``mu`` is an endpoint when that commutator keeps its sign, and
    otherwise the root where it vanishes.

    Args:
        frame: The probe in an orthonormal basis, with one or two parameters.

    Returns:
        The d x l matrix W; its columns are the estimator vectors in frame coordinates.

    Raises:
        ArgumentError: If the frame has more than two parameters.
    """
    n_params = frame.n_params()
    if n_params > 2:
        raise ArgumentError(
            'Exact estimators need at most 2 parameters, got {}'.format(n_params)
        )
    if n_params == 1:
        return _estimators_at(frame, 0.0)

    def commutator(mu: float) -> float:
        w_mat = _estimators_at(frame, mu)
        return float(w_mat[:, 0] @ frame.d_mat() @ w_mat[:, 1])

    if commutator(1.0) >= 0.0:
        return _estimators_at(frame, 1.0)
    if commutator(-1.0) <= 0.0:
        return _estimators_at(frame, -1.0)
    mu = scipy.optimize.brentq(commutator, -1.0, 1.0, xtol=1e-15)
    _logger.debug('Commuting estimators at multiplier {:.15g}'.format(mu))
    return _estimators_at(frame, mu)


def _estimators_at(frame: EuclideanFrame, mu: float) -> np.ndarray:
    # Minimizes |W|^2 + mu w_1^T D w_2 subject to M W = I through its KKT system.
    m_mat, d_mat = frame.m_mat(), frame.d_mat()
    n_params, dimension = m_mat.shape
    size = n_params * dimension

    hessian = 2.0 * np.eye(size)
    if n_params == 2:
        hessian[:dimension, dimension:] = mu * d_mat
        hessian[dimension:, :dimension] = -mu * d_mat
    constraints = scipy.linalg.block_diag(*([m_mat] * n_params))
    kkt = np.block(
        [
            [hessian, constraints.T],
            [constraints, np.zeros((constraints.shape[0], constraints.shape[0]))],
        ]
    )
    rhs = np.concatenate([np.zeros(size), np.eye(n_params).ravel()])
    try:
        solution = scipy.linalg.solve(kkt, rhs, assume_a='sym')
    except (scipy.linalg.LinAlgError, ValueError):
        solution = scipy.linalg.lstsq(kkt, rhs)[0]
    return solution[:size].reshape(n_params, dimension).T


def _refined_estimators(frame: EuclideanFrame, w_mat: np.ndarray) -> np.ndarray:
    refined = minimal_estimators(frame)
    current = _holevo_functional(w_mat.T @ w_mat, _commutators(frame, w_mat)).total
    exact = _holevo_functional(refined.T @ refined, _commutators(frame, refined)).total
    if exact > current + REFINE_TOL:
        _logger.warning(
            'Refined estimators reach {:.12g} above {:.12g}, keeping the optimizer'.format(
                exact, current
            )
        )
        return w_mat
    _logger.debug(
        'Refined estimators: largest change {:.3e}'.format(float(np.max(np.abs(refined - w_mat))))
    )
    return refined


def _commutators(frame: EuclideanFrame, w_mat: np.ndarray) -> np.ndarray:
    return _antisymmetrize(w_mat.T @ frame.d_mat() @ w_mat)


def _holevo_functional(alpha: np.ndarray, commutators: np.ndarray) -> AchievedMse:
    trace_real = float(np.trace(alpha))
    trabs_imag = trabs(0.5 * commutators)
    return AchievedMse(
        total=trace_real + trabs_imag, trace_real=trace_real, trabs_imag=trabs_imag
    )


def _antisymmetrize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix - matrix.T)
