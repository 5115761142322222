import math

import numpy as np
import pytest

from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian.probe_model import symmetric_tmst_probe
from pyholevo.gaussian.symplectic import symplectic_matrix
from pyholevo.simulation.optics import beam_splitter_symplectic, propagate, tmst_covariance


@pytest.mark.parametrize('t', [0.0, 0.3, 0.5, 1.0])
def test_beam_splitter_is_symplectic_and_orthogonal(t):
    symplectic = beam_splitter_symplectic(t, 0, 2, n_modes=3)
    omega = symplectic_matrix(3)

    assert np.allclose(symplectic @ omega @ symplectic.T, omega)
    assert np.allclose(symplectic @ symplectic.T, np.eye(6))


def test_beam_splitter_action():
    root = math.sqrt(0.5)

    symplectic = beam_splitter_symplectic(0.5, 0, 1)

    assert np.allclose(symplectic @ [1.0, 0.0, 0.0, 0.0], [root, 0.0, -root, 0.0])
    assert np.allclose(symplectic @ [0.0, 0.0, 0.0, 1.0], [0.0, root, 0.0, root])


@pytest.mark.parametrize(
    'args,expected',
    [
        ((1.5, 0, 1), 'Beam splitter transmission must be in [0, 1].'),
        ((math.nan, 0, 1), 'Beam splitter transmission must be in [0, 1].'),
        ((0.5, 1, 1), 'Beam splitter needs two distinct modes in [0, 2), got 1 and 1.'),
        ((0.5, 0, 3, 2), 'Beam splitter needs two distinct modes in [0, 2), got 0 and 3.'),
    ],
)
def test_invalid_beam_splitter(args, expected):
    with pytest.raises(ArgumentError) as exception:
        beam_splitter_symplectic(*args)

    assert str(exception.value) == expected


@pytest.mark.parametrize('v,r', [(0.5, 0.0), (1.0, 0.3), (2.0, 1.1)])
def test_tmst_covariance_is_valid(v, r):
    covariance = tmst_covariance(v, r)
    omega = symplectic_matrix(2)

    assert np.linalg.eigvalsh(covariance + 0.5j * omega)[0] >= -1e-10


@pytest.mark.parametrize('v,r', [(0.5, 0.0), (1.0, 0.3), (2.0, 1.1)])
def test_balanced_splitter_decouples_the_probe(v, r):
    theta = np.array([0.4, -0.9])
    probe = symmetric_tmst_probe(v, r)

    covariance, mean = propagate(
        beam_splitter_symplectic(0.5, 0, 1), tmst_covariance(v, r), [theta[0], theta[1], 0.0, 0.0]
    )

    assert np.allclose(covariance, probe.covariance())
    assert np.allclose(mean, probe.mean_coeffs().T @ theta)


def test_propagate_shape_mismatch():
    with pytest.raises(ArgumentError) as exception:
        propagate(np.eye(4), np.eye(2), np.zeros(2))

    assert (
        str(exception.value)
        == 'Cannot propagate a state of dimension (2, 2) through a (4, 4) transform.'
    )
