"""
This module manages EuclideanFrame objects: orthonormal bases of phase space
under the correlation inner product, and the matrices expressed in them.
"""

import logging
import math
from typing import Tuple, Union

import numpy as np
import scipy.linalg

from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian import errors
from pyholevo.gaussian.exceptions import InvalidStateError, UndefinedConstraintError
from pyholevo.gaussian.probe_model import ProbeModel, check_tmst_parameters
from pyholevo.gaussian.symplectic import symplectic_matrix

_logger = logging.getLogger(__name__)

ORTHONORMAL_TOL = 1e-10
ANTISYMMETRY_TOL = 1e-12
# Eigenvalues of I + i/2 D at or below this are treated as pure-state directions.
PURE_DIRECTION_TOL = 1e-9

CHOLESKY_BASIS = 'cholesky'
EIGEN_BASIS = 'eigen'

BasisChoice = Union[str, np.ndarray]


class EuclideanFrame(object):
    """Represents a probe in an orthonormal basis ``E`` of ``(alpha, Z)``.

    Holds ``M`` with ``M_jk = alpha(m_j, e_k)``, the antisymmetric ``D`` with
    ``D_jk = alpha(e_j, Dcal e_k)`` and the Hermitian ``K = I + (i/2) D``,
    whose inverse is the constraint matrix ``C``.
    """

    def __init__(self, basis: np.ndarray, m_mat: np.ndarray, d_mat: np.ndarray) -> None:
        """Creates an EuclideanFrame instance.

        Args:
            basis: Real 2n x 2n matrix whose columns are the basis vectors.
            m_mat: Real l x 2n matrix M.
            d_mat: Real antisymmetric 2n x 2n matrix D.

        Raises:
            ArgumentError: When shapes do not agree or D is not antisymmetric.
            InvalidStateError: When I + (i/2) D is not positive semidefinite.
        """

        basis = np.array(basis, dtype=float)
        m_mat = np.array(m_mat, dtype=float)
        d_mat = np.array(d_mat, dtype=float)
        dimension = basis.shape[0]

        if basis.shape != (dimension, dimension) or d_mat.shape != basis.shape:
            raise ArgumentError(errors.BASIS_SHAPE.format(dimension))
        if m_mat.ndim != 2 or m_mat.shape[1] != dimension:
            raise ArgumentError(errors.COEFFS_SHAPE.format(dimension))

        scale = max(1.0, float(np.max(np.abs(d_mat), initial=0.0)))
        if np.max(np.abs(d_mat + d_mat.T), initial=0.0) > ANTISYMMETRY_TOL * scale:
            raise ArgumentError('Matrix D must be antisymmetric')

        self._basis = basis
        self._m_mat = m_mat
        self._d_mat = 0.5 * (d_mat - d_mat.T)
        self._k_mat = np.eye(dimension) + 0.5j * self._d_mat
        self._kappa, self._kappa_vectors = scipy.linalg.eigh(self._k_mat)

        if self._kappa[0] < -PURE_DIRECTION_TOL:
            raise InvalidStateError(
                'I + (i/2) D has negative eigenvalue {:.3e}'.format(self._kappa[0])
            )

        for array in (self._basis, self._m_mat, self._d_mat, self._k_mat):
            array.flags.writeable = False

    def basis(self) -> np.ndarray:
        """Returns a copy of the basis matrix E (columns are basis vectors)."""
        return self._basis.copy()

    def m_mat(self) -> np.ndarray:
        """Returns a copy of M."""
        return self._m_mat.copy()

    def d_mat(self) -> np.ndarray:
        """Returns a copy of D."""
        return self._d_mat.copy()

    def k_mat(self) -> np.ndarray:
        """Returns a copy of K = I + (i/2) D."""
        return self._k_mat.copy()

    def dimension(self) -> int:
        return self._basis.shape[0]

    def n_params(self) -> int:
        return self._m_mat.shape[0]

    def pure_directions(self) -> int:
        """Returns the number of zero eigenvalues of K, one per pure-state direction of the probe."""
        return int(np.sum(self._kappa <= PURE_DIRECTION_TOL))

    def c_mat(self) -> np.ndarray:
        """Returns the Hermitian positive definite constraint matrix C = K^-1.

        Raises:
            UndefinedConstraintError: If K is singular, as for probes containing vacuum modes.
        """
        pure = self.pure_directions()
        if pure:
            raise UndefinedConstraintError(pure)
        vectors = self._kappa_vectors
        c_mat = (vectors / self._kappa) @ vectors.conj().T
        return 0.5 * (c_mat + c_mat.conj().T)

    def c_range(self) -> Tuple[np.ndarray, np.ndarray]:
        """Returns the spectral data of the constraint on the range of K.

        The constraint ``F <= C`` is expressed as ``V* F V <= diag(1/kappa)``,
        where the columns of ``V`` are the eigenvectors of K with nonzero
        eigenvalue ``kappa``. This form stays defined when K is singular.

        Returns:
            A tuple ``(V, 1/kappa)``.
        """
        keep = self._kappa > PURE_DIRECTION_TOL
        return self._kappa_vectors[:, keep].copy(), 1.0 / self._kappa[keep]

    def max_kappa(self) -> float:
        """Returns the largest eigenvalue of K; its inverse is the smallest eigenvalue of C."""
        return float(self._kappa[-1])

    def __repr__(self) -> str:
        return 'EuclideanFrame(dimension={}, n_params={}, pure_directions={})'.format(
            self.dimension(), self.n_params(), self.pure_directions()
        )


def orthonormal_frame(model: ProbeModel, basis: BasisChoice = CHOLESKY_BASIS) -> EuclideanFrame:
    """Builds the EuclideanFrame of a probe.

    By default ``E = L^-T`` from the Cholesky factorization ``A = L L^T``.
    Any orthonormal basis gives the same bounds.

    Args:
        model: The probe.
        basis: ``'cholesky'``, ``'eigen'`` or an explicit 2n x 2n basis matrix.

    Returns:
        The frame.

    Raises:
        InvalidStateError: If the covariance is not positive definite.
        ArgumentError: If the basis choice is unknown or an explicit basis is not orthonormal.

    Examples:
        >>> from pyholevo.gaussian.probe_model import symmetric_tmst_probe
        >>> frame = orthonormal_frame(symmetric_tmst_probe(0.75, 0.0))
        >>> round(float(frame.d_mat()[0, 1]), 12)
        1.333333333333
    """
    if isinstance(basis, str):
        if basis == CHOLESKY_BASIS:
            return frame_from_basis(model, cholesky_basis(model), validate=False)
        if basis == EIGEN_BASIS:
            return frame_from_basis(model, eigen_basis(model), validate=False)
        raise ArgumentError(errors.UNKNOWN_BASIS.format(basis))
    return frame_from_basis(model, basis)


def frame_from_basis(model: ProbeModel, basis: np.ndarray, validate: bool = True) -> EuclideanFrame:
    """Builds the frame of a probe in a given basis.

    Args:
        model: The probe.
        basis: Real 2n x 2n matrix ``E`` with ``E^T A E = I``.
        validate: Whether to check orthonormality to 1e-10.

    Raises:
        ArgumentError: If the basis has the wrong shape or is not orthonormal.
    """
    basis = np.array(basis, dtype=float)
    covariance = model.covariance()
    dimension = covariance.shape[0]
    if basis.shape != (dimension, dimension):
        raise ArgumentError(errors.BASIS_SHAPE.format(dimension))

    if validate:
        deviation = float(np.max(np.abs(basis.T @ covariance @ basis - np.eye(dimension))))
        if deviation > ORTHONORMAL_TOL:
            raise ArgumentError(errors.BASIS_NOT_ORTHONORMAL.format(deviation))

    omega = symplectic_matrix(model.n_modes())
    frame = EuclideanFrame(basis, model.mean_coeffs() @ basis, basis.T @ omega @ basis)
    if frame.pure_directions():
        _logger.debug(
            'Frame has {} pure-state direction(s)'.format(frame.pure_directions())
        )
    return frame


def cholesky_basis(model: ProbeModel) -> np.ndarray:
    """Returns ``L^-T`` where ``A = L L^T``."""
    try:
        lower = scipy.linalg.cholesky(model.covariance(), lower=True)
    except scipy.linalg.LinAlgError:
        raise InvalidStateError('Covariance is not positive definite')
    identity = np.eye(lower.shape[0])
    return scipy.linalg.solve_triangular(lower, identity, lower=True).T


def eigen_basis(model: ProbeModel) -> np.ndarray:
    """Returns ``U Lambda^-1/2`` from the eigendecomposition ``A = U Lambda U^T``."""
    eigenvalues, eigenvectors = scipy.linalg.eigh(model.covariance())
    if eigenvalues[0] <= 0.0:
        raise InvalidStateError('Covariance is not positive definite')
    return eigenvectors / np.sqrt(eigenvalues)


def tmst_diagonal_basis(v: float, r: float) -> np.ndarray:
    """Returns the diagonal basis ``diag(e^r, e^-r, e^-r, e^r)/sqrt(v)`` of the decoupled symmetric probe."""
    check_tmst_parameters(v, r)
    grow, shrink = math.exp(r), math.exp(-r)
    return np.diag([grow, shrink, shrink, grow]) / math.sqrt(v)
