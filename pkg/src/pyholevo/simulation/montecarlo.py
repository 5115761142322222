"""
Monte Carlo simulation of the joint displacement measurements on the two-mode squeezed thermal probe.

Every element is Gaussian, so the homodyne outcomes of one shot are drawn
from the exact joint normal distribution of the measured quadratures. Shots
run in batches; batch ``i`` draws from ``PCG64(SeedSequence([seed, i]))``,
which makes results independent of the number of workers.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg

from pyholevo.config import ConfigSetter
from pyholevo.gaussian.probe_model import VACUUM_VARIANCE, check_tmst_parameters
from pyholevo.simulation.exceptions import InvalidCircuitError
from pyholevo.simulation.optics import beam_splitter_symplectic, propagate, tmst_covariance

_logger = logging.getLogger(__name__)

DOUBLE_HOMODYNE = 'double_homodyne'
DOUBLE_UNBALANCED_HETERODYNE = 'double_unbalanced_heterodyne'
SCHEMES = (DOUBLE_HOMODYNE, DOUBLE_UNBALANCED_HETERODYNE)

DEFAULT_SHOTS = 1000000
DEFAULT_BATCH_SIZE = 100000
_MAX_SEED = 2 ** 64

# Measured quadrature indices in (Q_1, P_1, Q_2, P_2, ...) order. Heterodyne
# ancillas are modes 2 and 3; mode 0 feeds Q_0 and P_2, mode 1 feeds P_1 and Q_3.
_HOMODYNE_READOUTS = (0, 3)
_HETERODYNE_READOUTS = (0, 5, 3, 6)


@dataclass(frozen=True)
class CircuitSpec:
    """A simulated measurement run.

    Attributes:
        scheme: DOUBLE_HOMODYNE or DOUBLE_UNBALANCED_HETERODYNE.
        v: Thermal variance of the probe modes.
        r: Two-mode squeezing.
        t: Transmission of the unbalanced beam splitters, in (0, 1]; ignored for double homodyne.
        theta: True displacement (theta_1, theta_2).
        shots: Number of repetitions.
        seed: Non-negative 64-bit seed.
        batch_size: Shots per RNG stream.
        workers: Threads; defaults to the configured worker count.
    """

    scheme: str
    v: float
    r: float
    t: float = 1.0
    theta: Tuple[float, float] = (0.0, 0.0)
    shots: int = DEFAULT_SHOTS
    seed: int = 0
    batch_size: int = DEFAULT_BATCH_SIZE
    workers: Optional[int] = None

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise InvalidCircuitError(
                'unknown scheme "{}", expected one of {}'.format(self.scheme, ', '.join(SCHEMES))
            )
        check_tmst_parameters(self.v, self.r)
        if self.scheme == DOUBLE_UNBALANCED_HETERODYNE and not (
            math.isfinite(self.t) and 0.0 < self.t <= 1.0
        ):
            raise InvalidCircuitError('transmission t must be in (0, 1], got {}'.format(self.t))
        if len(self.theta) != 2 or not all(math.isfinite(value) for value in self.theta):
            raise InvalidCircuitError('theta must be two finite numbers')
        if not _is_positive_int(self.shots):
            raise InvalidCircuitError('shots must be a positive integer')
        if not _is_positive_int(self.batch_size):
            raise InvalidCircuitError('batch size must be a positive integer')
        if self.workers is not None and not _is_positive_int(self.workers):
            raise InvalidCircuitError('workers must be a positive integer')
        if not (isinstance(self.seed, int) and 0 <= self.seed < _MAX_SEED):
            raise InvalidCircuitError('seed must be an integer in [0, 2^64)')


@dataclass(frozen=True)
class SimulationResult:
    """Empirical statistics of the estimates.

    Attributes:
        empirical_mean: Average estimate per parameter.
        empirical_mse_sum: ``sum_j mean((theta_hat_j - theta_j)^2)``.
        standard_error: Standard error of ``empirical_mse_sum``.
        shots_used: Number of shots.
        mean_standard_error: Standard error of each entry of ``empirical_mean``.
        predicted_mse: Exact sum of MSE of the simulated estimator.
    """

    empirical_mean: Tuple[float, ...]
    empirical_mse_sum: float
    standard_error: float
    shots_used: int
    mean_standard_error: Tuple[float, ...]
    predicted_mse: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class OutcomeModel:
    """Readouts as ``mean_map @ theta + noise(covariance)`` and the estimator ``estimator @ readouts``."""

    mean_map: np.ndarray
    covariance: np.ndarray
    estimator: np.ndarray
    predicted_mse: float


def simulate(spec: CircuitSpec) -> SimulationResult:
    """Runs the measurement ``spec.shots`` times and collects estimator statistics.

    The estimator is the minimum-variance unbiased linear combination of
    the readouts, solved exactly against the propagated mean map.

    Args:
        spec: The run.

    Returns:
        The SimulationResult.
    """
    model = outcome_model(spec)
    theta = np.asarray(spec.theta, dtype=float)
    mean = model.mean_map @ theta
    cholesky = scipy.linalg.cholesky(model.covariance, lower=True)

    batches = _batch_sizes(spec.shots, spec.batch_size)
    workers = spec.workers or ConfigSetter().get_config().workers

    def run(index: int) -> List[float]:
        return _run_batch(spec.seed, index, batches[index], mean, cholesky, model.estimator, theta)

    _logger.debug(
        'Simulating {} shots of {} in {} batch(es) on {} worker(s)'.format(
            spec.shots, spec.scheme, len(batches), workers
        )
    )
    with ThreadPoolExecutor(max_workers=workers) as executor:
        partials = list(executor.map(run, range(len(batches))))

    return _aggregate(partials, spec.shots, theta, model.predicted_mse)


def outcome_model(spec: CircuitSpec) -> OutcomeModel:
    """Returns the readout mean map, readout covariance and estimator weights of a circuit."""
    covariance, symplectic, readouts = _circuit(spec)
    n_dimension = covariance.shape[0]
    # Displacement acts on the first input mode: mean (theta_1, theta_2, 0, ...).
    input_map = np.zeros((n_dimension, 2))
    input_map[0, 0] = input_map[1, 1] = 1.0

    out_covariance, out_map = propagate(symplectic, covariance, input_map)
    index = list(readouts)
    readout_covariance = out_covariance[np.ix_(index, index)]
    mean_map = out_map[index, :]

    weighted = scipy.linalg.solve(readout_covariance, mean_map, assume_a='pos')
    information = mean_map.T @ weighted
    estimator_covariance = scipy.linalg.inv(information)
    estimator = estimator_covariance @ weighted.T
    return OutcomeModel(
        mean_map=mean_map,
        covariance=readout_covariance,
        estimator=estimator,
        predicted_mse=float(np.trace(estimator_covariance)),
    )


def _circuit(spec: CircuitSpec) -> Tuple[np.ndarray, np.ndarray, Tuple[int, ...]]:
    probe = tmst_covariance(spec.v, spec.r)
    if spec.scheme == DOUBLE_HOMODYNE:
        return probe, beam_splitter_symplectic(0.5, 0, 1), _HOMODYNE_READOUTS

    covariance = scipy.linalg.block_diag(probe, VACUUM_VARIANCE * np.eye(4))
    symplectic = (
        beam_splitter_symplectic(spec.t, 1, 3, n_modes=4)
        @ beam_splitter_symplectic(spec.t, 0, 2, n_modes=4)
        @ beam_splitter_symplectic(0.5, 0, 1, n_modes=4)
    )
    return covariance, symplectic, _HETERODYNE_READOUTS


def _run_batch(
    seed: int,
    index: int,
    shots: int,
    mean: np.ndarray,
    cholesky: np.ndarray,
    estimator: np.ndarray,
    theta: np.ndarray,
) -> List[float]:
    generator = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))
    noise = generator.standard_normal((shots, mean.size))
    outcomes = mean + noise @ cholesky.T
    errors = outcomes @ estimator.T - theta
    squared = np.sum(errors ** 2, axis=1)
    # Per batch: [sum e_j..., sum e_j^2..., sum s, sum s^2] with s the squared error sum.
    return (
        np.sum(errors, axis=0).tolist()
        + np.sum(errors ** 2, axis=0).tolist()
        + [float(np.sum(squared)), float(np.sum(squared ** 2))]
    )


def _aggregate(
    partials: List[List[float]], shots: int, theta: np.ndarray, predicted_mse: float
) -> SimulationResult:
    n_params = theta.size
    totals = [math.fsum(column) for column in zip(*partials)]
    error_sums = totals[:n_params]
    error_squares = totals[n_params : 2 * n_params]
    mse_sum, mse_square = totals[-2], totals[-1]

    mse = mse_sum / shots
    bias = [value / shots for value in error_sums]
    mean_standard_error = tuple(
        _standard_error(square / shots, b, shots) for square, b in zip(error_squares, bias)
    )
    return SimulationResult(
        empirical_mean=tuple(float(value + b) for value, b in zip(theta, bias)),
        empirical_mse_sum=mse,
        standard_error=_standard_error(mse_square / shots, mse, shots),
        shots_used=shots,
        mean_standard_error=mean_standard_error,
        predicted_mse=predicted_mse,
    )


def _standard_error(second_moment: float, first_moment: float, shots: int) -> float:
    if shots < 2:
        return math.inf
    variance = max(second_moment - first_moment ** 2, 0.0) * shots / (shots - 1)
    return math.sqrt(variance / shots)


def _batch_sizes(shots: int, batch_size: int) -> List[int]:
    full, rest = divmod(shots, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def _is_positive_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value > 0
