"""
Construction of the block semidefinite program whose optimum is the Holevo bound.

Dual form: minimize ``b^T y`` subject to ``sum_j y_j B_j - C >= 0``.
Primal form: maximize ``Tr(C X)`` subject to ``Tr(B_j X) = b_j`` and ``X >= 0``.

Each ``B_j`` and ``C`` is block diagonal with three blocks:

* ``[[B_j, 0], [0, M A_j M^T]]`` against ``[[0, -I], [-I, 0]]``, the Schur
  complement lift of ``H >= (M F M^T)^-1``;
* ``A_j`` against ``0``, the constraint ``F >= 0``;
* ``-A_j`` against ``-C``, the constraint ``F <= C``. This block is complex.

The first ``d(d+1)/2`` coordinates of ``y`` expand ``F`` in the symmetric
basis ``A_j`` and the last ``l(l+1)/2`` expand ``H`` in the basis ``B_j``.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian.euclidean_frame import EuclideanFrame

_logger = logging.getLogger(__name__)

Blocks = Tuple[np.ndarray, ...]


@dataclass(frozen=True, eq=False)
class SdpProblem:
    """Data of a block-diagonal SDP.

    Attributes:
        b: Objective vector of length K.
        basis_matrices: K tuples of blocks, one tuple per ``B_j``.
        c_matrix: Blocks of ``C``.
        block_structure: Block sizes.
        complex_blocks: Which blocks carry complex Hermitian data.
        initial_y: Optional strictly feasible dual point.
        n_f_coordinates: Number of leading y coordinates that expand ``F``.
    """

    b: np.ndarray
    basis_matrices: Tuple[Blocks, ...]
    c_matrix: Blocks
    block_structure: Tuple[int, ...]
    complex_blocks: Tuple[bool, ...]
    initial_y: Optional[np.ndarray] = None
    n_f_coordinates: int = 0

    def __post_init__(self) -> None:
        n_blocks = len(self.block_structure)
        if len(self.c_matrix) != n_blocks or len(self.complex_blocks) != n_blocks:
            raise ArgumentError('C and block flags must match the block structure')
        if len(self.basis_matrices) != len(self.b):
            raise ArgumentError(
                'Expected {} basis matrices, got {}'.format(
                    len(self.b), len(self.basis_matrices)
                )
            )
        for blocks in (self.c_matrix,) + tuple(self.basis_matrices):
            if len(blocks) != n_blocks:
                raise ArgumentError('Every matrix must have {} blocks'.format(n_blocks))
            for block, size in zip(blocks, self.block_structure):
                if np.shape(block) != (size, size):
                    raise ArgumentError(
                        'Block of shape {} does not match size {}'.format(
                            np.shape(block), size
                        )
                    )
        if self.initial_y is not None and np.shape(self.initial_y) != np.shape(self.b):
            raise ArgumentError('Initial y must have the length of b')

    def size(self) -> int:
        """Returns the number K of constraints."""
        return len(self.b)

    def dimension(self) -> int:
        """Returns the total side length of the block matrices."""
        return int(sum(self.block_structure))

    def dense_basis_matrix(self, j: int) -> np.ndarray:
        """Returns ``B_j`` as one dense block-diagonal matrix."""
        return self.join_blocks(self.basis_matrices[j])

    def dense_c_matrix(self) -> np.ndarray:
        """Returns ``C`` as one dense block-diagonal matrix."""
        return self.join_blocks(self.c_matrix)

    def join_blocks(self, blocks: Sequence[np.ndarray]) -> np.ndarray:
        """Assembles blocks into one dense block-diagonal matrix."""
        return scipy.linalg.block_diag(*[np.asarray(block) for block in blocks])

    def dual_slack(self, y: np.ndarray) -> Blocks:
        """Returns the blocks of ``sum_j y_j B_j - C``."""
        y = np.asarray(y, dtype=float)
        slack = []
        for k, c_block in enumerate(self.c_matrix):
            total = -np.asarray(c_block, dtype=complex if self.complex_blocks[k] else float)
            for y_j, blocks in zip(y, self.basis_matrices):
                if y_j:
                    total = total + y_j * blocks[k]
            slack.append(total)
        return tuple(slack)

    def primal_value(self, x_blocks: Sequence[np.ndarray]) -> float:
        """Returns ``Tr(C X)`` (real part)."""
        return float(
            sum(_trace_product(block, x_block) for block, x_block in zip(self.c_matrix, x_blocks))
        )

    def dual_value(self, y: np.ndarray) -> float:
        return float(np.dot(self.b, y))


def symmetric_basis(dimension: int) -> List[np.ndarray]:
    """Returns a basis of the real symmetric matrices of a given size.

    The diagonal units come first, then ``E_ij + E_ji`` for ``i < j`` in
    lexicographic order.

    Examples:
        >>> len(symmetric_basis(4))
        10
        >>> symmetric_basis(2)[2].tolist()
        [[0.0, 1.0], [1.0, 0.0]]
    """
    basis = []
    for i in range(dimension):
        unit = np.zeros((dimension, dimension))
        unit[i, i] = 1.0
        basis.append(unit)
    for i in range(dimension):
        for j in range(i + 1, dimension):
            pair = np.zeros((dimension, dimension))
            pair[i, j] = pair[j, i] = 1.0
            basis.append(pair)
    return basis


def build_sdp(frame: EuclideanFrame) -> SdpProblem:
    """Builds the Holevo bound SDP of a frame.

    When ``I + (i/2) D`` is singular, ``C`` does not exist and the third
    block is replaced by the equivalent constraint ``V* F V <= diag(1/kappa)``
    on the range of ``I + (i/2) D``.

    Args:
        frame: The probe in an orthonormal basis.

    Returns:
        The SDP with ``K = l(l+1)/2 + d(d+1)/2`` constraints.
    """
    n_params, dimension = frame.n_params(), frame.dimension()
    m_mat = frame.m_mat()
    f_basis = symmetric_basis(dimension)
    h_basis = symmetric_basis(n_params)

    pure = frame.pure_directions()
    if pure:
        _logger.warning(
            'Probe has {} pure-state direction(s): constraining F on the range of I + i/2 D'.format(
                pure
            )
        )
        vectors, inverse_kappa = frame.c_range()
        c_block = -np.diag(inverse_kappa).astype(complex)
    else:
        vectors = np.eye(dimension, dtype=complex)
        c_block = -frame.c_mat()
    range_size = vectors.shape[1]

    zero_l = np.zeros((n_params, n_params))
    basis_matrices = []
    for a_j in f_basis:
        lift = scipy.linalg.block_diag(zero_l, m_mat @ a_j @ m_mat.T)
        upper = -(vectors.conj().T @ a_j @ vectors)
        basis_matrices.append((lift, a_j, 0.5 * (upper + upper.conj().T)))
    for b_j in h_basis:
        lift = scipy.linalg.block_diag(b_j, zero_l)
        basis_matrices.append(
            (
                lift,
                np.zeros((dimension, dimension)),
                np.zeros((range_size, range_size), dtype=complex),
            )
        )

    identity = np.eye(n_params)
    c_matrix = (
        np.block([[zero_l, -identity], [-identity, zero_l]]),
        np.zeros((dimension, dimension)),
        c_block,
    )

    b = np.zeros(len(basis_matrices))
    b[len(f_basis) : len(f_basis) + n_params] = 1.0

    return SdpProblem(
        b=b,
        basis_matrices=tuple(basis_matrices),
        c_matrix=c_matrix,
        block_structure=(2 * n_params, dimension, range_size),
        complex_blocks=(False, False, True),
        initial_y=_initial_y(frame, len(f_basis), len(h_basis)),
        n_f_coordinates=len(f_basis),
    )


def _initial_y(frame: EuclideanFrame, n_f: int, n_h: int) -> np.ndarray:
    # F = f I sits strictly inside 0 <= F <= C since the smallest eigenvalue of C is 1/max(kappa).
    f_scale = 0.5 / frame.max_kappa()
    m_mat = frame.m_mat()
    smallest = float(scipy.linalg.eigvalsh(m_mat @ m_mat.T)[0])
    h_scale = 2.0 / (f_scale * smallest)

    y = np.zeros(n_f + n_h)
    dimension, n_params = frame.dimension(), frame.n_params()
    y[:dimension] = f_scale
    y[n_f : n_f + n_params] = h_scale
    return y


def _trace_product(left: np.ndarray, right: np.ndarray) -> float:
    # Tr(L R) == sum(L^T * R)
    return float(np.real(np.sum(np.asarray(left).T * np.asarray(right))))
