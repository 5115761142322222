import json
import math

import numpy as np
import pytest

from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian.exceptions import (
    InvalidStateError,
    ParseProbeError,
    UnidentifiableParameterError,
)
from pyholevo.gaussian.probe_model import (
    ProbeModel,
    is_valid_covariance,
    riesz_vector,
    symmetric_tmst_probe,
)
from pyholevo.utils.exceptions import LoadFileError
from test.utils.utils import (
    MALFORMED_PROBE_PATH,
    THERMAL_PROBE_PATH,
    UNPHYSICAL_PROBE_PATH,
    VACUUM_PROBE_PATH,
    WRONG_ORDERING_PROBE_PATH,
    read_file_text,
    thermal_probe,
)


def test_create_probe():
    probe = thermal_probe(1.5)

    assert probe.n_modes() == 1
    assert probe.n_params() == 2
    assert np.array_equal(probe.covariance(), 1.5 * np.eye(2))
    assert repr(probe) == 'ProbeModel(n_modes=1, n_params=2)'


def test_probe_data_is_immutable():
    probe = thermal_probe(1.5)
    covariance = probe.covariance()
    covariance[0, 0] = 7.0

    assert probe.covariance()[0, 0] == 1.5


@pytest.mark.parametrize(
    'covariance,expected',
    [
        ([[1.0, 0.0, 0.0]], 'Covariance must be a square matrix of even dimension.'),
        (np.eye(3), 'Covariance must be a square matrix of even dimension.'),
        ([[1.0, math.nan], [math.nan, 1.0]], 'Covariance entries must be finite numbers.'),
        ([[1.0, 0.2], [0.0, 1.0]], 'Covariance must be symmetric.'),
        (
            [[0.2, 0.0], [0.0, 0.2]],
            'Covariance violates the uncertainty principle: smallest eigenvalue of A + (i/2)Omega is -3.000e-01.',
        ),
    ],
)
def test_invalid_covariance(covariance, expected):
    with pytest.raises(InvalidStateError) as exception:
        ProbeModel(covariance, [[1.0, 0.0]])

    assert str(exception.value) == expected
    assert not is_valid_covariance(covariance)


def test_vacuum_covariance_is_valid():
    assert is_valid_covariance(0.5 * np.eye(4))


def test_squeezed_vacuum_is_valid():
    assert is_valid_covariance(np.diag([0.5 * math.exp(-2.0), 0.5 * math.exp(2.0)]))


def test_mean_coeffs_wrong_shape():
    with pytest.raises(ArgumentError) as exception:
        ProbeModel(np.eye(2), [[1.0, 0.0, 0.0]])

    assert str(exception.value) == 'Mean coefficients must be an l x 2n matrix with 2n = 2 columns.'


def test_mean_coeffs_rank_deficient():
    with pytest.raises(UnidentifiableParameterError) as exception:
        ProbeModel(np.eye(2), [[1.0, 0.0], [2.0, 0.0]])

    assert (
        str(exception.value)
        == 'Mean coefficients must have full row rank: parameters are not independently imprinted.'
    )


def test_correlation():
    probe = ProbeModel(np.array([[2.0, 0.5], [0.5, 1.0]]), np.eye(2))

    assert probe.correlation([1.0, 0.0], [0.0, 1.0]) == 0.5
    assert probe.correlation([1.0, 1.0], [1.0, 1.0]) == 4.0


def test_riesz_vector_represents_the_mean_functional():
    probe = ProbeModel(np.array([[2.0, 0.5], [0.5, 1.0]]), np.eye(2))
    coeff = np.array([0.3, -0.7])

    vector = riesz_vector(coeff, probe)

    for z in (np.array([1.0, 0.0]), np.array([0.4, 2.0])):
        assert np.isclose(probe.correlation(vector, z), coeff @ z)


def test_riesz_vector_wrong_length():
    with pytest.raises(ArgumentError) as exception:
        riesz_vector(np.ones(4), thermal_probe(1.0))

    assert str(exception.value) == 'Coordinate vectors must have the same even length.'


def test_tensor_vacuum():
    probe = thermal_probe(1.5).tensor_vacuum(2)

    assert probe.n_modes() == 3
    assert np.array_equal(probe.covariance().diagonal(), [1.5, 1.5, 0.5, 0.5, 0.5, 0.5])
    assert np.array_equal(probe.mean_coeffs()[:, 2:], np.zeros((2, 4)))


def test_symmetric_tmst_probe():
    v, r = 1.0, 0.3
    probe = symmetric_tmst_probe(v, r)

    expected = v * np.diag([math.exp(-2 * r), math.exp(2 * r), math.exp(2 * r), math.exp(-2 * r)])
    assert np.allclose(probe.covariance(), expected)
    assert np.allclose(
        probe.mean_coeffs() * math.sqrt(2.0), [[1.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, -1.0]]
    )


@pytest.mark.parametrize(
    'v,r,error,expected',
    [
        (0.4, 0.0, InvalidStateError, 'Thermal variance v must be at least 1/2.'),
        (math.inf, 0.0, InvalidStateError, 'Thermal variance v must be at least 1/2.'),
        (1.0, -0.1, ArgumentError, 'Squeezing r must be non-negative.'),
    ],
)
def test_symmetric_tmst_probe_invalid_parameters(v, r, error, expected):
    with pytest.raises(error) as exception:
        symmetric_tmst_probe(v, r)

    assert str(exception.value) == expected


def test_parse_probe():
    probe = ProbeModel.parse(read_file_text(VACUUM_PROBE_PATH))
    expected = symmetric_tmst_probe(0.5, 0.0)

    assert np.allclose(probe.covariance(), expected.covariance())
    assert np.allclose(probe.mean_coeffs(), expected.mean_coeffs())


def test_parse_probe_without_ordering_key():
    probe = ProbeModel.parse(read_file_text(THERMAL_PROBE_PATH))

    assert probe == thermal_probe(1.5)


@pytest.mark.parametrize(
    'probe_json,expected',
    [
        ('[]', 'Error parsing probe model: top level value must be an object.'),
        ('{"modes": 1}', 'Error parsing probe model: missing key(s) params, covariance, mean_coeffs.'),
        (
            json.dumps({'modes': 0, 'params': 1, 'covariance': [], 'mean_coeffs': []}),
            'Error parsing probe model: modes must be a positive integer.',
        ),
        (
            json.dumps(
                {'modes': 2, 'params': 1, 'covariance': [[1, 0], [0, 1]], 'mean_coeffs': [[1, 0]]}
            ),
            'Error parsing probe model: covariance shape (2, 2) does not match modes=2.',
        ),
        (
            json.dumps(
                {'modes': 1, 'params': 2, 'covariance': [[1, 0], [0, 1]], 'mean_coeffs': [[1, 0]]}
            ),
            'Error parsing probe model: mean_coeffs shape (1, 2) does not match params=2 and modes=1.',
        ),
    ],
)
def test_parse_invalid_probe(probe_json, expected):
    with pytest.raises(ParseProbeError) as exception:
        ProbeModel.parse(probe_json)

    assert str(exception.value) == expected


def test_parse_wrong_ordering():
    with pytest.raises(ParseProbeError) as exception:
        ProbeModel.parse(read_file_text(WRONG_ORDERING_PROBE_PATH))

    assert (
        str(exception.value)
        == 'Error parsing probe model: Only the "yx-interleaved" coordinate ordering is supported.'
    )


def test_parse_malformed_json():
    with pytest.raises(ParseProbeError) as exception:
        ProbeModel.parse(read_file_text(MALFORMED_PROBE_PATH))

    assert str(exception.value).startswith('Error parsing probe model: invalid JSON:')


def test_load_unphysical_probe():
    with pytest.raises(InvalidStateError):
        ProbeModel.load(UNPHYSICAL_PROBE_PATH)


def test_load_missing_file():
    with pytest.raises(LoadFileError) as exception:
        ProbeModel.load('no-such-probe.json')

    assert str(exception.value) == 'Error loading file: File not found: no-such-probe.json.'


def test_save_and_load_probe(tmpdir):
    probe = symmetric_tmst_probe(1.2, 0.4)
    path = str(tmpdir.join('probe.json'))

    probe.save(path)

    assert ProbeModel.load(path) == probe
    assert json.loads(read_file_text(path))['ordering'] == 'yx-interleaved'


def test_probe_equality_and_hash():
    assert thermal_probe(1.0) == thermal_probe(1.0)
    assert thermal_probe(1.0) != thermal_probe(2.0)
    assert hash(thermal_probe(1.0)) == hash(thermal_probe(1.0))
    assert thermal_probe(1.0) != 'probe'


def test_parse_non_numeric_matrix():
    probe_json = json.dumps(
        {'modes': 1, 'params': 1, 'covariance': [['a', 0], [0, 1]], 'mean_coeffs': [[1, 0]]}
    )

    with pytest.raises(ParseProbeError) as exception:
        ProbeModel.parse(probe_json)

    assert str(exception.value).startswith(
        'Error parsing probe model: matrices must be numeric arrays:'
    )
