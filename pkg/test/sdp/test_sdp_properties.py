import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from pyholevo.bounds.fisher_bounds import fisher_bounds
from pyholevo.closed_form.tmst_solution import holevo_bound_closed
from pyholevo.gaussian.euclidean_frame import EIGEN_BASIS, orthonormal_frame
from pyholevo.gaussian.probe_model import symmetric_tmst_probe
from pyholevo.measurement.measurement_plan import extract_plan
from pyholevo.sdp.holevo_bound import constraint_margins, holevo_bound
from test.utils.utils import random_probe

_probes = st.tuples(
    st.integers(min_value=0, max_value=2 ** 32 - 1),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
).filter(lambda case: case[2] <= 2 * case[1])


@given(_probes)
@settings(max_examples=15, deadline=None)
def test_bound_hierarchy_on_random_probes(case):
    seed, n_modes, n_params = case
    frame = orthonormal_frame(random_probe(n_modes, n_params, np.random.default_rng(seed)))

    result = holevo_bound(frame)
    fisher = fisher_bounds(frame)

    assert result.sigma_star >= max(fisher.c_sld, fisher.c_rld) - 1e-7
    # The bound never exceeds twice the SLD bound.
    assert result.sigma_star <= 2.0 * fisher.c_sld + 1e-7
    assert result.report.is_optimal()


@given(_probes)
@settings(max_examples=10, deadline=None)
def test_bound_is_basis_independent_on_random_probes(case):
    seed, n_modes, n_params = case
    probe = random_probe(n_modes, n_params, np.random.default_rng(seed))

    cholesky = holevo_bound(orthonormal_frame(probe)).sigma_star
    eigen = holevo_bound(orthonormal_frame(probe, EIGEN_BASIS)).sigma_star

    assert abs(cholesky - eigen) <= 1e-7 * max(1.0, abs(cholesky))


@given(
    st.floats(min_value=0.6, max_value=4.0, allow_nan=False, allow_infinity=False),
    st.floats(min_value=0.0, max_value=1.5, allow_nan=False, allow_infinity=False),
)
@settings(max_examples=20, deadline=None)
def test_closed_form_agrees_with_solver(v, r):
    result = holevo_bound(orthonormal_frame(symmetric_tmst_probe(v, r)))

    assert math.isclose(result.sigma_star, holevo_bound_closed(v, r), abs_tol=1e-6)


def test_strong_duality_on_seeded_random_probes():
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n_modes = int(rng.integers(1, 4))
        n_params = int(rng.integers(1, min(3, 2 * n_modes) + 1))
        frame = orthonormal_frame(random_probe(n_modes, n_params, rng))

        result = holevo_bound(frame)

        assert abs(result.certificate.gap) <= 1e-8, seed
        assert result.certificate.primal_infeasibility <= 1e-8, seed
        assert result.report.is_optimal(), seed


def _random_feasible_f(frame, rng):
    # Scales a random positive definite matrix under C: G x = lambda C x with lambda <= 1.
    dimension = frame.dimension()
    factor = rng.normal(size=(dimension, dimension))
    g_mat = factor @ factor.T + 0.1 * np.eye(dimension)
    largest = scipy.linalg.eigh(g_mat.astype(complex), frame.c_mat(), eigvals_only=True)[-1]
    return rng.uniform(0.05, 1.0) * g_mat / largest


@pytest.mark.parametrize(
    'probe',
    [
        symmetric_tmst_probe(1.0, 0.2),
        symmetric_tmst_probe(0.75, 0.5),
        random_probe(2, 2, np.random.default_rng(40)),
        random_probe(3, 3, np.random.default_rng(41)),
    ],
)
def test_random_feasible_f_never_beats_the_bound(probe):
    frame = orthonormal_frame(probe)
    m_mat = frame.m_mat()
    sigma_star = holevo_bound(frame).sigma_star
    rng = np.random.default_rng(50)

    for _ in range(50):
        f_mat = _random_feasible_f(frame, rng)
        lower, upper = constraint_margins(frame, f_mat)

        assert lower > 0.0
        assert upper >= -1e-12
        assert np.trace(np.linalg.inv(m_mat @ f_mat @ m_mat.T)) >= sigma_star - 1e-7
        plan = extract_plan(frame, f_mat, refine=False)
        assert plan.achieved_mse >= sigma_star - 1e-7
