import math

import numpy as np
import pytest

from pyholevo.closed_form.exceptions import OutOfRangeError
from pyholevo.closed_form.tmst_solution import (
    REGIME_AT_OR_ABOVE,
    REGIME_BELOW,
    SINGLE_MODE_HETERODYNE_MSE,
    c0_upper_limit,
    certificate_closed,
    certificate_eigenvalues,
    closed_form_solution,
    double_homodyne_mse,
    f_times_m_closed,
    holevo_bound_closed,
    optimal_F_closed,
    regime,
    tmst_sdp,
    transmission,
)
from pyholevo.gaussian.entanglement import threshold_squeezing
from pyholevo.gaussian.euclidean_frame import orthonormal_frame
from pyholevo.gaussian.probe_model import symmetric_tmst_probe
from pyholevo.measurement.measurement_plan import optimal_directions
from pyholevo.sdp.certificate import verify_certificate
from pyholevo.sdp.holevo_bound import constraint_margins

_BELOW = [(0.75, 0.0), (0.75, 0.1), (1.0, 0.0), (1.0, 0.2), (2.5, 0.5), (4.0, 0.9)]
_ABOVE = [(0.75, 0.3), (1.0, 0.5 * math.log(2.0)), (1.0, 0.6), (2.5, 1.0), (0.6, 1.4)]


def _family(v, r):
    # Both ends and the middle of the admissible c0 range.
    upper = c0_upper_limit(v, r)
    return [0.0, 0.5 * upper, upper]


@pytest.mark.parametrize('v', [0.75, 1.0, 3.0])
def test_bound_is_continuous_at_threshold(v):
    r0 = threshold_squeezing(v)
    below = (4.0 * v * v - 1.0) / (2.0 * v * math.cosh(2.0 * r0) - 1.0)

    assert math.isclose(holevo_bound_closed(v, r0), SINGLE_MODE_HETERODYNE_MSE)
    assert math.isclose(below, SINGLE_MODE_HETERODYNE_MSE)


@pytest.mark.parametrize('v,r', _BELOW)
def test_bound_below_threshold_beats_double_homodyne(v, r):
    assert regime(v, r) == REGIME_BELOW
    assert holevo_bound_closed(v, r) < double_homodyne_mse(v, r)
    assert holevo_bound_closed(v, r) > SINGLE_MODE_HETERODYNE_MSE


@pytest.mark.parametrize('v,r', _ABOVE)
def test_double_homodyne_is_optimal_above_threshold(v, r):
    assert regime(v, r) == REGIME_AT_OR_ABOVE
    assert holevo_bound_closed(v, r) == double_homodyne_mse(v, r)
    assert holevo_bound_closed(v, r) <= SINGLE_MODE_HETERODYNE_MSE + 1e-12


@pytest.mark.parametrize('v,r', _BELOW)
def test_transmission_below_threshold(v, r):
    assert 0.0 < transmission(v, r) < 1.0


@pytest.mark.parametrize('v', [0.75, 1.0, 3.0])
def test_transmission_is_one_at_threshold(v):
    assert math.isclose(transmission(v, threshold_squeezing(v)), 1.0)


def test_transmission_is_undefined_for_unsqueezed_vacuum():
    with pytest.raises(OutOfRangeError) as exception:
        transmission(0.5, 0.0)

    assert (
        str(exception.value)
        == 'Closed form is not defined here: transmission is 0/0 at v = 1/2, r = 0.'
    )


def test_c0_upper_limit():
    v = 1.0
    assert math.isclose(c0_upper_limit(v, 0.0), v / (2.0 * v + 1.0))
    assert c0_upper_limit(v, 0.6) == 0.0


@pytest.mark.parametrize('v,r', _BELOW + _ABOVE)
def test_optimal_f_is_feasible_and_optimal(v, r):
    frame = orthonormal_frame(symmetric_tmst_probe(v, r))
    m_mat = frame.m_mat()

    for c0 in _family(v, r):
        f_opt = optimal_F_closed(v, r, c0)
        lower, upper = constraint_margins(frame, f_opt)
        trace = np.trace(np.linalg.inv(m_mat @ f_opt @ m_mat.T))

        assert lower >= -1e-10
        assert upper >= -1e-10
        assert math.isclose(trace, holevo_bound_closed(v, r), rel_tol=1e-10)


@pytest.mark.parametrize('v,r', _BELOW + _ABOVE)
def test_optimal_directions_do_not_depend_on_c0(v, r):
    frame = orthonormal_frame(symmetric_tmst_probe(v, r))

    for c0 in _family(v, r):
        directions = optimal_directions(frame, optimal_F_closed(v, r, c0))

        assert np.allclose(directions, f_times_m_closed(v, r), atol=1e-12)


def test_c0_outside_family():
    with pytest.raises(OutOfRangeError) as exception:
        optimal_F_closed(1.0, 0.0, 0.5)

    assert str(exception.value) == 'Closed form is not defined here: c0 = 0.5 is outside [0, 0.333333].'


@pytest.mark.parametrize('v,r', _BELOW + _ABOVE)
def test_closed_form_certificate_is_optimal(v, r):
    problem = tmst_sdp(v, r)

    for c0 in _family(v, r):
        y, x_blocks = certificate_closed(v, r, c0)
        report = verify_certificate(problem, x_blocks, y, tol=1e-9)

        assert report.is_optimal(), report
        assert math.isclose(report.dual_value, holevo_bound_closed(v, r), rel_tol=1e-12)


@pytest.mark.parametrize('v,r', _BELOW + _ABOVE)
def test_certificate_spectra(v, r):
    for c0 in _family(v, r):
        spectra = certificate_eigenvalues(v, r, c0)

        assert spectra.dual_slack.shape == (12,)
        assert spectra.primal.shape == (12,)
        assert spectra.max_deviation() <= 1e-9


def test_certificate_needs_mixed_probe():
    with pytest.raises(OutOfRangeError) as exception:
        certificate_closed(0.5, 0.3)

    assert str(exception.value) == 'Closed form is not defined here: certificates need v > 1/2.'


def test_closed_form_solution_below_threshold():
    solution = closed_form_solution(1.0, 0.2)

    assert solution.regime == REGIME_BELOW
    assert math.isclose(solution.r0, 0.5 * math.log(2.0))
    assert math.isclose(solution.t, transmission(1.0, 0.2))
    assert solution.y_star.shape == (13,)
    assert len(solution.x_star) == 3
    assert np.allclose(solution.f_opt_at(0.1), optimal_F_closed(1.0, 0.2, 0.1))


def test_closed_form_solution_of_vacuum_probe():
    solution = closed_form_solution(0.5, 0.3)

    assert solution.regime == REGIME_AT_OR_ABOVE
    assert solution.t is None
    assert solution.y_star is None
    assert solution.x_star is None
    assert math.isclose(solution.sigma_star, 2.0 * math.exp(-0.6))
