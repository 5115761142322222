"""
Dense primal-dual interior-point solver for small block-diagonal SDPs.

Mehrotra predictor-corrector steps in the Nesterov-Todd scaling. Complex
Hermitian blocks are embedded as real symmetric blocks of twice the size, so
the cone arithmetic is real throughout; solutions are folded back to complex
form on return. The iteration is deterministic.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg

from pyholevo.config import ConfigSetter
from pyholevo.sdp.exceptions import ConvergenceError
from pyholevo.sdp.problem import Blocks, SdpProblem
from pyholevo.utils.linalg import realify, realify_adjoint

_logger = logging.getLogger(__name__)

STEP_FRACTION = 0.98
STALL_STEP = 1e-12
# Iterations without a smaller residual before the iteration is considered stalled.
STALL_ITERATIONS = 10

STATUS_OPTIMAL = 'optimal'
# Returned from the best iterate after the iteration stalled, within tolerance.
STATUS_STALLED = 'stalled'
# Residual and eigenvalue slack allowed for a stalled iterate; the gap is still bounded by tol.
STALLED_FEASIBILITY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SdpSolution:
    """Primal-dual pair returned by :func:`solve`.

    Attributes:
        y: Dual vector of length K.
        x_blocks: Primal blocks; complex Hermitian where the problem block is complex.
        s_blocks: Dual slack blocks ``sum_j y_j B_j - C``.
        primal_value: ``Tr(C X)``.
        dual_value: ``b^T y``.
        gap: ``dual_value - primal_value``.
        iterations: Number of interior-point iterations.
        primal_infeasibility: ``max_j |Tr(B_j X) - b_j|``.
        dual_infeasibility: Largest entry of the dual residual.
        status: Termination status.
    """

    y: np.ndarray
    x_blocks: Blocks
    s_blocks: Blocks
    primal_value: float
    dual_value: float
    gap: float
    iterations: int
    primal_infeasibility: float
    dual_infeasibility: float
    status: str = STATUS_OPTIMAL

    def x_matrix(self) -> np.ndarray:
        """Returns X as one dense block-diagonal matrix."""
        return scipy.linalg.block_diag(*self.x_blocks)


@dataclass(frozen=True, eq=False)
class _Iterate:
    score: float
    iteration: int
    y: np.ndarray
    x_blocks: List[np.ndarray]
    residuals: Dict[str, float]


def _score(residuals: Dict[str, float]) -> float:
    return max(
        abs(residuals['gap']),
        residuals['primal_infeasibility'],
        residuals['dual_infeasibility'],
    )


class _RealProblem(object):
    """Real symmetric embedding of an SdpProblem, with the basis stacked per block."""

    def __init__(self, problem: SdpProblem) -> None:
        self.b = np.asarray(problem.b, dtype=float)
        self.complex_blocks = problem.complex_blocks
        self.basis: List[np.ndarray] = []
        self.c: List[np.ndarray] = []
        for k, is_complex in enumerate(problem.complex_blocks):
            embed = realify if is_complex else _real_symmetric
            self.basis.append(
                np.array([embed(blocks[k]) for blocks in problem.basis_matrices])
            )
            self.c.append(embed(problem.c_matrix[k]))
        self.sizes = [c.shape[0] for c in self.c]
        self.nu = float(sum(self.sizes))
        self.gram = sum(np.einsum('iab,jab->ij', basis, basis) for basis in self.basis)

    def adjoint(self, y: np.ndarray) -> List[np.ndarray]:
        """Returns ``sum_j y_j B_j`` per block."""
        return [np.tensordot(y, basis, axes=1) for basis in self.basis]

    def apply(self, x_blocks: List[np.ndarray]) -> np.ndarray:
        """Returns ``(Tr(B_j X))_j``."""
        return sum(
            np.einsum('jab,ab->j', basis, x) for basis, x in zip(self.basis, x_blocks)
        )

    def primal_value(self, x_blocks: List[np.ndarray]) -> float:
        return float(sum(_inner(c, x) for c, x in zip(self.c, x_blocks)))

    def residuals(
        self, y: np.ndarray, x_blocks: List[np.ndarray], s_blocks: List[np.ndarray]
    ) -> Dict[str, float]:
        r_dual = [a - c - s for a, c, s in zip(self.adjoint(y), self.c, s_blocks)]
        return {
            'gap': float(np.dot(self.b, y)) - self.primal_value(x_blocks),
            'primal_infeasibility': float(np.max(np.abs(self.b - self.apply(x_blocks)))),
            'dual_infeasibility': float(max(np.max(np.abs(r)) for r in r_dual)),
        }

    def polish(self, iterate: _Iterate) -> _Iterate:
        """Projects X onto the affine set ``Tr(B_j X) = b_j``, keeping y."""
        r_primal = self.b - self.apply(iterate.x_blocks)
        try:
            coefficients = scipy.linalg.solve(self.gram, r_primal, assume_a='pos')
        except (np.linalg.LinAlgError, ValueError):
            return iterate
        x_blocks = [
            _symmetrize(x + np.tensordot(coefficients, basis, axes=1))
            for x, basis in zip(iterate.x_blocks, self.basis)
        ]
        residuals = dict(
            iterate.residuals,
            gap=float(np.dot(self.b, iterate.y)) - self.primal_value(x_blocks),
            primal_infeasibility=float(np.max(np.abs(self.b - self.apply(x_blocks)))),
        )
        return _Iterate(_score(residuals), iterate.iteration, iterate.y, x_blocks, residuals)

    def is_acceptable(self, iterate: _Iterate, tol: float) -> bool:
        """Checks a stalled iterate against ``tol`` with the stalled feasibility slack."""
        slack = max(tol, STALLED_FEASIBILITY_TOL)
        gap = iterate.residuals['gap']
        if not -slack <= gap <= tol:
            return False
        if iterate.residuals['primal_infeasibility'] > slack:
            return False
        if iterate.residuals['dual_infeasibility'] > slack:
            return False
        return all(float(scipy.linalg.eigvalsh(x)[0]) >= -slack for x in iterate.x_blocks)

    def initial_point(
        self, initial_y: Optional[np.ndarray]
    ) -> Tuple[List[np.ndarray], np.ndarray, List[np.ndarray]]:
        norms = [
            np.sqrt(sum(np.sum(basis[j] ** 2) for basis in self.basis))
            for j in range(len(self.b))
        ]
        ratio = max(
            (1.0 + abs(b_j)) / (1.0 + norm) for b_j, norm in zip(self.b, norms)
        )
        xi = max(10.0, np.sqrt(self.nu), self.nu * ratio)
        x_blocks = [xi * np.eye(size) for size in self.sizes]

        if initial_y is not None:
            y = np.asarray(initial_y, dtype=float).copy()
            s_blocks = [a - c for a, c in zip(self.adjoint(y), self.c)]
            if all(_is_positive_definite(s) for s in s_blocks):
                return x_blocks, y, s_blocks
            _logger.debug('Initial y is not strictly feasible, starting from S = xi I')

        y = np.zeros(len(self.b))
        s_blocks = [xi * np.eye(size) for size in self.sizes]
        return x_blocks, y, s_blocks


def solve(
    problem: SdpProblem, tol: Optional[float] = None, max_iterations: Optional[int] = None
) -> SdpSolution:
    """Solves an SDP to an absolute duality gap of ``tol``.

    The iterate is accepted once the gap and the primal and dual residuals
    are all within ``tol``. If the iteration stalls or runs out of
    iterations, the best iterate is projected onto the primal constraints
    and returned with status ``stalled`` when its gap lies in
    ``[-1e-8, tol]`` and its residuals and the eigenvalues of X are within 1e-8.

    Args:
        problem: The SDP; a strictly feasible ``initial_y`` is used when present.
        tol: Absolute tolerance. Defaults to the configured solver
            tolerance (1e-9 unless HOLEVO_SOLVER_TOL is set).
        max_iterations: Iteration limit. Defaults to the configured limit (200).

    Returns:
        The primal-dual solution.

    Raises:
        ConvergenceError: If the tolerance is not reached; the best iterate
            and its residuals are attached to the error.
    """
    if tol is None or max_iterations is None:
        config = ConfigSetter().get_config()
        tol = config.solver_tol if tol is None else tol
        max_iterations = config.max_iterations if max_iterations is None else max_iterations

    real = _RealProblem(problem)
    x_blocks, y, s_blocks = real.initial_point(problem.initial_y)

    best: Optional[_Iterate] = None
    since_best = 0
    iteration = 0

    for iteration in range(max_iterations + 1):
        r_primal = real.b - real.apply(x_blocks)
        r_dual = [a - c - s for a, c, s in zip(real.adjoint(y), real.c, s_blocks)]
        residuals = real.residuals(y, x_blocks, s_blocks)
        mu = sum(_inner(x, s) for x, s in zip(x_blocks, s_blocks)) / real.nu

        _logger.debug(
            'iter {:3d}: dual {:.12e} gap {:.3e} pinf {:.3e} dinf {:.3e} mu {:.3e}'.format(
                iteration,
                float(np.dot(real.b, y)),
                residuals['gap'],
                residuals['primal_infeasibility'],
                residuals['dual_infeasibility'],
                mu,
            )
        )

        score = _score(residuals)
        if not np.isfinite(score):
            break
        if best is None or score < best.score:
            best = _Iterate(score, iteration, y.copy(), [x.copy() for x in x_blocks], residuals)
            since_best = 0
        else:
            since_best += 1

        if score <= tol:
            _logger.info(
                'SDP solved in {} iterations: gap {:.3e}'.format(iteration, residuals['gap'])
            )
            return _solution(problem, real, y, x_blocks, iteration, residuals)

        if iteration == max_iterations:
            break
        if since_best >= STALL_ITERATIONS:
            _logger.debug('No progress in {} iterations'.format(since_best))
            break

        try:
            step = _NewtonSystem(real, x_blocks, s_blocks, r_primal, r_dual)
            corrector = step.mehrotra_direction(mu, real.nu)
            alpha_p = step.step_length(corrector.dx)
            alpha_d = step.step_length(corrector.ds)
        except (np.linalg.LinAlgError, ValueError, ZeroDivisionError) as err:
            _logger.debug('Step failed: {}'.format(str(err)))
            break

        if alpha_p < STALL_STEP and alpha_d < STALL_STEP:
            _logger.debug('Step lengths collapsed at iteration {}'.format(iteration))
            break

        ds_unscaled = [a + r for a, r in zip(real.adjoint(corrector.dy), r_dual)]
        x_blocks = [
            _symmetrize(x + alpha_p * (g @ dx @ g.T))
            for x, g, dx in zip(x_blocks, step.g, corrector.dx)
        ]
        s_blocks = [_symmetrize(s + alpha_d * ds) for s, ds in zip(s_blocks, ds_unscaled)]
        y = y + alpha_d * corrector.dy

    if best is None:
        raise ConvergenceError('iterates are not finite')

    for candidate in (real.polish(best), best):
        if real.is_acceptable(candidate, tol):
            _logger.info(
                'SDP stalled at iteration {}, using the iterate from iteration {}'.format(
                    iteration, candidate.iteration
                )
            )
            return _solution(
                problem,
                real,
                candidate.y,
                candidate.x_blocks,
                candidate.iteration,
                candidate.residuals,
                status=STATUS_STALLED,
            )

    raise ConvergenceError(
        'gap {gap:.3e}, primal infeasibility {primal_infeasibility:.3e}, '
        'dual infeasibility {dual_infeasibility:.3e} after {iterations} iterations'.format(
            iterations=iteration, **best.residuals
        ),
        best_y=best.y,
        best_x_blocks=_fold_blocks(real, best.x_blocks),
        residuals=best.residuals,
    )


@dataclass
class _Direction:
    dy: np.ndarray
    dx: List[np.ndarray]
    ds: List[np.ndarray]


class _NewtonSystem(object):
    """Scaled Newton system at one iterate.

    With ``G^T S G = G^-1 X G^-T = diag(lam)`` per block, a direction solves
    ``A(dX) = r_p``, ``dS = A*(dy) + R_d`` and ``lam o (dX + dS) = R`` in the
    scaled space, where ``o`` is the symmetrized product.
    """

    def __init__(
        self,
        real: _RealProblem,
        x_blocks: List[np.ndarray],
        s_blocks: List[np.ndarray],
        r_primal: np.ndarray,
        r_dual: List[np.ndarray],
    ) -> None:
        self.g: List[np.ndarray] = []
        self.lam: List[np.ndarray] = []
        for x, s in zip(x_blocks, s_blocks):
            g, lam = _nt_scaling(x, s)
            self.g.append(g)
            self.lam.append(lam)

        self.basis = [
            np.matmul(g.T, np.matmul(basis, g)) for g, basis in zip(self.g, real.basis)
        ]
        self.r_dual = [g.T @ r @ g for g, r in zip(self.g, r_dual)]
        self.r_primal = r_primal

        schur = sum(np.einsum('iab,jab->ij', basis, basis) for basis in self.basis)
        self.schur = 0.5 * (schur + schur.T)
        try:
            self._cholesky: Optional[Tuple[np.ndarray, bool]] = scipy.linalg.cho_factor(
                self.schur
            )
        except np.linalg.LinAlgError:
            _logger.debug('Schur complement is not positive definite, using least squares')
            self._cholesky = None

    def direction(self, targets: List[np.ndarray]) -> _Direction:
        lyapunov = [
            2.0 * target / (lam[:, None] + lam[None, :])
            for target, lam in zip(targets, self.lam)
        ]
        rhs = -self.r_primal + sum(
            np.einsum('jab,ab->j', basis, u - r)
            for basis, u, r in zip(self.basis, lyapunov, self.r_dual)
        )
        if self._cholesky is not None:
            dy = scipy.linalg.cho_solve(self._cholesky, rhs)
        else:
            dy = scipy.linalg.lstsq(self.schur, rhs)[0]
        ds = [np.tensordot(dy, basis, axes=1) + r for basis, r in zip(self.basis, self.r_dual)]
        dx = [u - d for u, d in zip(lyapunov, ds)]
        return _Direction(dy=dy, dx=dx, ds=ds)

    def mehrotra_direction(self, mu: float, nu: float) -> _Direction:
        """Returns the corrector direction after an affine predictor."""
        predictor = self.direction([-np.diag(lam ** 2) for lam in self.lam])
        alpha_p = self.step_length(predictor.dx)
        alpha_d = self.step_length(predictor.ds)
        mu_affine = (
            sum(
                _inner(np.diag(lam) + alpha_p * dx, np.diag(lam) + alpha_d * ds)
                for lam, dx, ds in zip(self.lam, predictor.dx, predictor.ds)
            )
            / nu
        )
        sigma = min(1.0, max(0.0, mu_affine / mu)) ** 3

        targets = []
        for lam, dx, ds in zip(self.lam, predictor.dx, predictor.ds):
            second_order = dx @ ds
            targets.append(
                sigma * mu * np.eye(lam.size)
                - np.diag(lam ** 2)
                - 0.5 * (second_order + second_order.T)
            )
        return self.direction(targets)

    def step_length(self, scaled_steps: List[np.ndarray]) -> float:
        """Returns the damped largest step keeping ``diag(lam) + alpha * step`` positive."""
        smallest = np.inf
        for lam, step in zip(self.lam, scaled_steps):
            root = 1.0 / np.sqrt(lam)
            normalized = _symmetrize(step * root[:, None] * root[None, :])
            smallest = min(smallest, float(scipy.linalg.eigvalsh(normalized)[0]))
        if smallest >= 0.0:
            return 1.0
        return min(1.0, STEP_FRACTION * (-1.0 / smallest))


def _nt_scaling(x: np.ndarray, s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    lower_x = _factor(x)
    lower_s = _factor(s)
    _, singular, vt = scipy.linalg.svd(lower_s.T @ lower_x)
    g = (lower_x @ vt.T) / np.sqrt(singular)
    return g, singular


def _factor(matrix: np.ndarray) -> np.ndarray:
    """Returns L with L L^T = matrix, falling back to an eigen factor near the boundary."""
    try:
        return scipy.linalg.cholesky(matrix, lower=True)
    except np.linalg.LinAlgError:
        eigenvalues, eigenvectors = scipy.linalg.eigh(matrix)
        floor = np.finfo(float).eps * max(float(eigenvalues[-1]), np.finfo(float).tiny)
        return eigenvectors * np.sqrt(np.maximum(eigenvalues, floor))


def _is_positive_definite(matrix: np.ndarray) -> bool:
    try:
        scipy.linalg.cholesky(matrix, lower=True)
    except np.linalg.LinAlgError:
        return False
    return True


def _solution(
    problem: SdpProblem,
    real: _RealProblem,
    y: np.ndarray,
    x_blocks: List[np.ndarray],
    iterations: int,
    residuals: Dict[str, float],
    status: str = STATUS_OPTIMAL,
) -> SdpSolution:
    folded_x = _fold_blocks(real, x_blocks)
    return SdpSolution(
        y=y.copy(),
        x_blocks=folded_x,
        s_blocks=problem.dual_slack(y),
        primal_value=problem.primal_value(folded_x),
        dual_value=problem.dual_value(y),
        gap=residuals['gap'],
        iterations=iterations,
        primal_infeasibility=residuals['primal_infeasibility'],
        dual_infeasibility=residuals['dual_infeasibility'],
        status=status,
    )


def _fold_blocks(real: _RealProblem, x_blocks: List[np.ndarray]) -> Blocks:
    return tuple(
        realify_adjoint(x) if is_complex else x.copy()
        for x, is_complex in zip(x_blocks, real.complex_blocks)
    )


def _real_symmetric(matrix: np.ndarray) -> np.ndarray:
    return np.real(np.asarray(matrix)).astype(float)


def _symmetrize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.T)


def _inner(left: np.ndarray, right: np.ndarray) -> float:
    return float(np.sum(left * right))

