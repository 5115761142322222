import math

import numpy as np
import pytest

from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian.euclidean_frame import orthonormal_frame
from pyholevo.gaussian.probe_model import symmetric_tmst_probe
from pyholevo.sdp.problem import SdpProblem, build_sdp, symmetric_basis
from test.utils.utils import random_probe


def _coordinates(matrix):
    size = matrix.shape[0]
    diagonal = [matrix[i, i] for i in range(size)]
    pairs = [matrix[i, j] for i in range(size) for j in range(i + 1, size)]
    return diagonal + pairs


def test_symmetric_basis():
    basis = symmetric_basis(3)

    assert len(basis) == 6
    assert basis[0].tolist() == [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
    assert basis[3].tolist() == [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
    assert basis[5].tolist() == [[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]


def test_build_sdp_layout():
    problem = build_sdp(orthonormal_frame(symmetric_tmst_probe(1.0, 0.3)))

    assert problem.size() == 13
    assert problem.n_f_coordinates == 10
    assert problem.block_structure == (4, 4, 4)
    assert problem.complex_blocks == (False, False, True)
    assert problem.dimension() == 12
    assert problem.b.tolist() == [0.0] * 10 + [1.0, 1.0, 0.0]


def test_build_sdp_for_pure_probe_uses_range_constraint():
    problem = build_sdp(orthonormal_frame(symmetric_tmst_probe(0.5, 0.3)))

    assert problem.block_structure == (4, 4, 2)
    assert np.allclose(problem.c_matrix[2], -0.5 * np.eye(2))


def test_dual_slack_encodes_the_bound_constraints():
    frame = orthonormal_frame(random_probe(2, 2, np.random.default_rng(2)))
    problem = build_sdp(frame)
    f_mat = np.diag([0.3, 0.2, 0.25, 0.1]) + 0.01
    h_mat = np.array([[2.0, 0.1], [0.1, 3.0]])
    m_mat = frame.m_mat()

    slack = problem.dual_slack(np.array(_coordinates(f_mat) + _coordinates(h_mat)))

    identity = np.eye(2)
    assert np.allclose(slack[0], np.block([[h_mat, identity], [identity, m_mat @ f_mat @ m_mat.T]]))
    assert np.allclose(slack[1], f_mat)
    assert np.allclose(slack[2], frame.c_mat() - f_mat)


def test_initial_y_is_strictly_feasible():
    problem = build_sdp(orthonormal_frame(random_probe(2, 3, np.random.default_rng(9))))

    slack = problem.dual_slack(problem.initial_y)

    assert all(np.linalg.eigvalsh(block)[0] > 0.0 for block in slack)


def test_primal_and_dual_values():
    problem = build_sdp(orthonormal_frame(symmetric_tmst_probe(1.0, 0.0)))
    y = np.arange(problem.size(), dtype=float)
    x_blocks = tuple(np.eye(size) for size in problem.block_structure)

    assert problem.dual_value(y) == 10.0 + 11.0
    # Tr C over the three blocks is 0 + 0 - Tr (4/3)(I - (i/2) Omega)
    assert math.isclose(problem.primal_value(x_blocks), -16.0 / 3.0)


def test_dense_matrices_match_the_blocks():
    frame = orthonormal_frame(random_probe(2, 2, np.random.default_rng(4)))
    problem = build_sdp(frame)
    y = problem.initial_y

    slack = sum(y_j * problem.dense_basis_matrix(j) for j, y_j in enumerate(y))
    slack = slack - problem.dense_c_matrix()

    assert slack.shape == (problem.dimension(), problem.dimension())
    assert np.allclose(slack, problem.join_blocks(problem.dual_slack(y)))
    assert np.allclose(problem.dense_c_matrix()[-4:, -4:], -frame.c_mat())


@pytest.mark.parametrize(
    'kwargs,expected',
    [
        ({'b': np.ones(2)}, 'Expected 2 basis matrices, got 1.'),
        ({'c_matrix': (np.eye(3),)}, 'Block of shape (3, 3) does not match size 2.'),
        ({'complex_blocks': (False, True)}, 'C and block flags must match the block structure.'),
        ({'initial_y': np.ones(3)}, 'Initial y must have the length of b.'),
    ],
)
def test_invalid_problem(kwargs, expected):
    data = {
        'b': np.ones(1),
        'basis_matrices': ((np.eye(2),),),
        'c_matrix': (np.eye(2),),
        'block_structure': (2,),
        'complex_blocks': (False,),
    }
    data.update(kwargs)

    with pytest.raises(ArgumentError) as exception:
        SdpProblem(**data)

    assert str(exception.value) == expected
