import math

import numpy as np

from pyholevo.gaussian.probe_model import ProbeModel

_TEST_PROBES_PATH = 'test/gaussian/probes/{}'

VACUUM_PROBE_PATH = _TEST_PROBES_PATH.format('vacuum_two_modes.json')
THERMAL_PROBE_PATH = _TEST_PROBES_PATH.format('thermal_single_mode.json')
MALFORMED_PROBE_PATH = _TEST_PROBES_PATH.format('malformed.json')
UNPHYSICAL_PROBE_PATH = _TEST_PROBES_PATH.format('unphysical.json')
WRONG_ORDERING_PROBE_PATH = _TEST_PROBES_PATH.format('wrong_ordering.json')


def read_file_text(filename):
    with open(filename, 'r', encoding='utf-8') as file:
        return file.read()


def thermal_probe(v):
    """Single-mode thermal probe with both quadratures displaced."""
    return ProbeModel(v * np.eye(2), np.eye(2))


def random_symplectic(n_modes, rng):
    """Product of random passive rotations and single-mode squeezers."""
    dimension = 2 * n_modes
    symplectic = np.eye(dimension)
    for _ in range(3):
        strengths = rng.uniform(-0.6, 0.6, n_modes)
        squeeze = np.diag([value for s in strengths for value in (math.exp(-s), math.exp(s))])
        real = rng.normal(size=(n_modes, n_modes))
        imag = rng.normal(size=(n_modes, n_modes))
        unitary, _ = np.linalg.qr(real + 1j * imag)
        passive = np.zeros((dimension, dimension))
        # (Q, P) interleaved: Q' = Re U Q - Im U P, P' = Im U Q + Re U P
        passive[0::2, 0::2] = unitary.real
        passive[0::2, 1::2] = -unitary.imag
        passive[1::2, 0::2] = unitary.imag
        passive[1::2, 1::2] = unitary.real
        symplectic = passive @ squeeze @ symplectic
    return symplectic


def random_probe(n_modes, n_params, rng, min_variance=0.55):
    """Random valid mixed Gaussian probe with full-rank mean coefficients."""
    variances = rng.uniform(min_variance, 2.0, n_modes)
    thermal = np.diag(np.repeat(variances, 2))
    symplectic = random_symplectic(n_modes, rng)
    covariance = symplectic @ thermal @ symplectic.T
    coeffs = rng.normal(size=(n_params, 2 * n_modes))
    return ProbeModel(0.5 * (covariance + covariance.T), coeffs)
