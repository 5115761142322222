import math

import numpy as np
import pytest

from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian.entanglement import (
    DUAN_SEPARABLE_LIMIT,
    duan_sum,
    is_entangled,
    threshold_squeezing,
)
from pyholevo.gaussian.exceptions import InvalidStateError
from pyholevo.simulation.optics import tmst_covariance


@pytest.mark.parametrize('v', [0.5, 0.75, 1.0, 3.0])
def test_duan_sum_reaches_the_separable_limit_at_threshold(v):
    assert math.isclose(duan_sum(v, threshold_squeezing(v)), DUAN_SEPARABLE_LIMIT)


@pytest.mark.parametrize('v,r', [(1.0, 0.0), (1.0, 0.7), (0.6, 0.05)])
def test_duan_sum_matches_covariance(v, r):
    covariance = tmst_covariance(v, r)
    sum_q = np.array([1.0, 0.0, 1.0, 0.0])
    difference_p = np.array([0.0, 1.0, 0.0, -1.0])

    expected = sum_q @ covariance @ sum_q + difference_p @ covariance @ difference_p

    assert math.isclose(duan_sum(v, r), expected)


@pytest.mark.parametrize('v,r', [(1.0, 0.7), (0.75, 0.2), (2.0, 1.5)])
def test_duan_sum_with_mode_two_rotated_by_pi(v, r):
    rotation = np.diag([1.0, 1.0, -1.0, -1.0])
    covariance = rotation @ tmst_covariance(v, r) @ rotation.T
    difference_q = np.array([1.0, 0.0, -1.0, 0.0])
    sum_p = np.array([0.0, 1.0, 0.0, 1.0])

    rotated = difference_q @ covariance @ difference_q + sum_p @ covariance @ sum_p
    unrotated = (
        difference_q @ tmst_covariance(v, r) @ difference_q
        + sum_p @ tmst_covariance(v, r) @ sum_p
    )

    assert math.isclose(rotated, duan_sum(v, r))
    assert math.isclose(unrotated, 4.0 * v * math.exp(2.0 * r))


@pytest.mark.parametrize(
    'v,r,expected',
    [
        (1.0, 0.0, False),
        (1.0, 0.5 * math.log(2.0), False),
        (1.0, 0.5 * math.log(2.0) + 1e-6, True),
        (0.5, 0.0, False),
        (0.5, 0.01, True),
        (2.0, 0.5, False),
        (2.0, 1.0, True),
    ],
)
def test_is_entangled(v, r, expected):
    assert is_entangled(v, r) is expected


def test_threshold_squeezing():
    assert math.isclose(threshold_squeezing(1.0), 0.5 * math.log(2.0))


def test_invalid_parameters():
    with pytest.raises(InvalidStateError):
        threshold_squeezing(0.3)
    with pytest.raises(ArgumentError):
        duan_sum(1.0, -1.0)
