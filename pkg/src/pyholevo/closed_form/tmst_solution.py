"""
Analytic solution of the Holevo bound SDP for the symmetric two-mode squeezed thermal probe.

Every quantity here refers to the decoupled probe of
:func:`pyholevo.gaussian.probe_model.symmetric_tmst_probe` expressed in the
diagonal basis ``diag(e^r, e^-r, e^-r, e^r)/sqrt(v)``, which is also the
Cholesky basis of that probe. Two regimes meet at the entanglement threshold
``r0 = log(2v)/2``; ``r == r0`` belongs to the upper regime.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from pyholevo.closed_form.exceptions import OutOfRangeError
from pyholevo.gaussian.entanglement import threshold_squeezing
from pyholevo.gaussian.euclidean_frame import orthonormal_frame
from pyholevo.gaussian.probe_model import (
    VACUUM_VARIANCE,
    check_tmst_parameters,
    symmetric_tmst_probe,
)
from pyholevo.sdp.problem import SdpProblem, build_sdp

REGIME_BELOW = 'below_threshold'
REGIME_AT_OR_ABOVE = 'at_or_above_threshold'

# Sum of MSE of the best single-mode Gaussian probe.
SINGLE_MODE_HETERODYNE_MSE = 2.0

C0_TOL = 1e-12

Certificate = Tuple[np.ndarray, Tuple[np.ndarray, np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class CertificateSpectra:
    """Sorted eigenvalues of ``sum_j y*_j B_j - C`` and of ``X*``.

    ``*_expected`` hold the analytic expressions, padded with zeros to the
    full block dimension.
    """

    dual_slack: np.ndarray
    dual_slack_expected: np.ndarray
    primal: np.ndarray
    primal_expected: np.ndarray

    def max_deviation(self) -> float:
        return float(
            max(
                np.max(np.abs(self.dual_slack - self.dual_slack_expected)),
                np.max(np.abs(self.primal - self.primal_expected)),
            )
        )


@dataclass(frozen=True, eq=False)
class ClosedFormSolution:
    """Analytic optimum at one (v, r).

    Attributes:
        v: Thermal variance.
        r: Squeezing.
        r0: Entanglement threshold.
        regime: REGIME_BELOW or REGIME_AT_OR_ABOVE.
        sigma_star: The Holevo bound.
        c0: Member of the optimizer family.
        f_opt: Optimal F at ``c0``.
        t: Beam-splitter transmission of the optimal circuit, below threshold only.
        y_star: Dual certificate, or None when ``v == 1/2``.
        x_star: Primal certificate blocks, or None when ``v == 1/2``.
    """

    v: float
    r: float
    r0: float
    regime: str
    sigma_star: float
    c0: float
    f_opt: np.ndarray
    t: Optional[float]
    y_star: Optional[np.ndarray]
    x_star: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]]

    def f_opt_at(self, c0: float) -> np.ndarray:
        return optimal_F_closed(self.v, self.r, c0)


def regime(v: float, r: float) -> str:
    check_tmst_parameters(v, r)
    return REGIME_BELOW if r < threshold_squeezing(v) else REGIME_AT_OR_ABOVE


def holevo_bound_closed(v: float, r: float) -> float:
    """Returns the Holevo bound of the symmetric probe.

    ``(4v^2 - 1)/(2v cosh 2r - 1)`` below threshold, ``4v e^-2r`` otherwise.

    Examples:
        >>> round(holevo_bound_closed(0.75, 0.5), 7)
        1.1036383
        >>> holevo_bound_closed(0.5, 0.0)
        2.0
    """
    if regime(v, r) == REGIME_BELOW:
        return (4.0 * v * v - 1.0) / (2.0 * v * math.cosh(2.0 * r) - 1.0)
    return 4.0 * v * math.exp(-2.0 * r)


def double_homodyne_mse(v: float, r: float) -> float:
    """Returns the sum of MSE of the double-homodyne measurement, ``4v e^-2r``, at any r."""
    check_tmst_parameters(v, r)
    return 4.0 * v * math.exp(-2.0 * r)


def transmission(v: float, r: float) -> float:
    """Returns ``t = (2v e^2r - 1)/(4v cosh 2r - 2)``.

    ``t`` lies in (0, 1) below threshold, equals 1 at the threshold and
    exceeds 1 above it, where no passive circuit realizes it.

    Raises:
        OutOfRangeError: At ``v == 1/2, r == 0`` where the ratio is 0/0.
    """
    check_tmst_parameters(v, r)
    denominator = 4.0 * v * math.cosh(2.0 * r) - 2.0
    if denominator <= 0.0:
        raise OutOfRangeError('transmission is 0/0 at v = 1/2, r = 0')
    return (2.0 * v * math.exp(2.0 * r) - 1.0) / denominator


def c0_upper_limit(v: float, r: float) -> float:
    """Returns the largest admissible c0: ``v/(2v cosh 2r - 1) - 2v/(4v^2 - 1)`` below threshold, 0 otherwise."""
    if regime(v, r) == REGIME_AT_OR_ABOVE:
        return 0.0
    limit = v / (2.0 * v * math.cosh(2.0 * r) - 1.0) - 2.0 * v / (4.0 * v * v - 1.0)
    return max(limit, 0.0)


def optimal_F_closed(v: float, r: float, c0: float = 0.0) -> np.ndarray:
    """Returns an optimal F.

    Above threshold ``diag(1, 0, 0, 1)``. Below threshold the family with
    diagonal ``(c1, c2, c2, c1)`` and ``-c0`` at positions (1, 3) and (2, 4).

    Raises:
        OutOfRangeError: If c0 is not admissible.
    """
    _check_c0(v, r, c0)
    if regime(v, r) == REGIME_AT_OR_ABOVE:
        return np.diag([1.0, 0.0, 0.0, 1.0])
    c1, c2 = _c1_c2(v, r, c0)
    return np.array(
        [
            [c1, 0.0, -c0, 0.0],
            [0.0, c2, 0.0, -c0],
            [-c0, 0.0, c2, 0.0],
            [0.0, -c0, 0.0, c1],
        ]
    )


def f_times_m_closed(v: float, r: float) -> np.ndarray:
    """Returns the phase-space coordinates of ``F* m_1`` and ``F* m_2`` as columns.

    These do not depend on c0.
    """
    check_tmst_parameters(v, r)
    e2r, em2r = math.exp(2.0 * r), math.exp(-2.0 * r)
    if regime(v, r) == REGIME_AT_OR_ABOVE:
        scale = e2r / (v * math.sqrt(2.0))
        return np.array([[scale, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, -scale]])
    scale = math.sqrt(2.0) / (4.0 * v * v - 1.0)
    return scale * np.array(
        [
            [2.0 * v * e2r - 1.0, 0.0],
            [0.0, 2.0 * v * em2r - 1.0],
            [1.0 - 2.0 * v * em2r, 0.0],
            [0.0, 1.0 - 2.0 * v * e2r],
        ]
    )


def certificate_closed(v: float, r: float, c0: float = 0.0) -> Certificate:
    """Returns the analytic dual vector ``y*`` and primal blocks ``X*``.

    The blocks follow the layout of :func:`pyholevo.sdp.problem.build_sdp`
    for the 2-parameter, 2-mode probe: 4x4 real, 4x4 real, 4x4 complex.

    Raises:
        OutOfRangeError: If v == 1/2 or c0 is not admissible.
    """
    _check_certificate_domain(v, r, c0)
    e2r, em2r = math.exp(2.0 * r), math.exp(-2.0 * r)

    if regime(v, r) == REGIME_AT_OR_ABOVE:
        h = 2.0 * v * em2r
        y = np.array([1.0, 0.0, 0.0, 1.0] + [0.0] * 6 + [h, h, 0.0])
        x1 = _lift_block(h)
        x2 = (em2r * (1.0 - 4.0 * v * v * em2r * em2r) / (2.0 * v)) * np.diag(
            [0.0, 1.0, 1.0, 0.0]
        )
        eps = em2r
        x3 = em2r * np.array(
            [
                [2.0 * v, 1j, -2.0 * v * eps, -4.0 * v * v * eps * 1j],
                [-1j, 1.0 / (2.0 * v), eps * 1j, -2.0 * v * eps],
                [-2.0 * v * eps, -eps * 1j, 1.0 / (2.0 * v), 1j],
                [4.0 * v * v * eps * 1j, -2.0 * v * eps, -1j, 2.0 * v],
            ]
        )
        return y, (x1, x2, x3)

    c1, c2 = _c1_c2(v, r, c0)
    h = _below_h(v, r)
    y = np.array([c1, c2, c2, c1, 0.0, -c0, 0.0, 0.0, -c0, 0.0, h, h, 0.0])
    x1 = _lift_block(h)
    x2 = np.zeros((4, 4))
    scale = (4.0 * v * v - 1.0) ** 2 / (2.0 * v * (4.0 * v * math.cosh(2.0 * r) - 2.0) ** 2)
    x3 = scale * np.array(
        [
            [e2r, 1j, -1.0, -1j * e2r],
            [-1j, em2r, 1j * em2r, -1.0],
            [-1.0, -1j * em2r, em2r, 1j],
            [1j * e2r, -1.0, -1j, e2r],
        ]
    )
    return y, (x1, x2, x3)


def certificate_eigenvalues(v: float, r: float, c0: float = 0.0) -> CertificateSpectra:
    """Computes the certificate spectra numerically and from their analytic expressions.

    Raises:
        OutOfRangeError: If v == 1/2 or c0 is not admissible.
    """
    y, x_blocks = certificate_closed(v, r, c0)
    slack_blocks = tmst_sdp(v, r).dual_slack(y)
    dual_slack = np.sort(np.concatenate([scipy.linalg.eigvalsh(s) for s in slack_blocks]))
    primal = np.sort(np.concatenate([scipy.linalg.eigvalsh(x) for x in x_blocks]))

    if regime(v, r) == REGIME_AT_OR_ABOVE:
        slack_expected, primal_expected = _expected_above(v, r)
    else:
        slack_expected, primal_expected = _expected_below(v, r, c0)
    return CertificateSpectra(
        dual_slack=dual_slack,
        dual_slack_expected=_pad_sorted(slack_expected, dual_slack.size),
        primal=primal,
        primal_expected=_pad_sorted(primal_expected, primal.size),
    )


def tmst_sdp(v: float, r: float) -> SdpProblem:
    """Returns the bound SDP of the symmetric probe in its diagonal basis."""
    return build_sdp(orthonormal_frame(symmetric_tmst_probe(v, r)))


def closed_form_solution(v: float, r: float, c0: float = 0.0) -> ClosedFormSolution:
    """Collects the analytic optimum at (v, r).

    Certificates are omitted for the vacuum-noise probe ``v == 1/2``, where
    ``(I + i/2 D)^-1`` does not exist.
    """
    r0 = threshold_squeezing(v)
    current = regime(v, r)
    y_star, x_star = None, None
    if v > VACUUM_VARIANCE:
        y_star, x_star = certificate_closed(v, r, c0)
    return ClosedFormSolution(
        v=v,
        r=r,
        r0=r0,
        regime=current,
        sigma_star=holevo_bound_closed(v, r),
        c0=c0,
        f_opt=optimal_F_closed(v, r, c0),
        t=transmission(v, r) if current == REGIME_BELOW else None,
        y_star=y_star,
        x_star=x_star,
    )


def _c1_c2(v: float, r: float, c0: float) -> Tuple[float, float]:
    e2r, em2r = math.exp(2.0 * r), math.exp(-2.0 * r)
    denominator = 4.0 * v * v - 1.0
    c1 = 2.0 * v * (2.0 * v - em2r) / denominator - em2r * c0
    c2 = 2.0 * v * (2.0 * v - e2r) / denominator - e2r * c0
    return c1, c2


def _below_h(v: float, r: float) -> float:
    return (4.0 * v * v - 1.0) / (4.0 * v * math.cosh(2.0 * r) - 2.0)


def _lift_block(h: float) -> np.ndarray:
    # X1 pairs H = h I with (M F M^T)^-1 = I / h
    return np.array(
        [
            [1.0, 0.0, -h, 0.0],
            [0.0, 1.0, 0.0, -h],
            [-h, 0.0, h * h, 0.0],
            [0.0, -h, 0.0, h * h],
        ]
    )


def _expected_above(v: float, r: float) -> Tuple[list, list]:
    em2r = math.exp(-2.0 * r)
    quad = 4.0 * v * v
    slack = [1.0, (1.0 + quad * em2r * em2r) / (2.0 * v * em2r), (quad + 1.0) / (quad - 1.0)]
    primal = [
        1.0 + quad * em2r * em2r,
        (1.0 - quad * em2r * em2r) * em2r / (2.0 * v),
    ]
    return (
        slack * 2,
        primal * 2
        + [
            (1.0 + quad) * (1.0 - 2.0 * v * em2r) * em2r / (2.0 * v),
            (1.0 + quad) * (1.0 + 2.0 * v * em2r) * em2r / (2.0 * v),
        ],
    )


def _expected_below(v: float, r: float, c0: float) -> Tuple[list, list]:
    cosh = math.cosh(2.0 * r)
    quad = 4.0 * v * v
    h = _below_h(v, r)
    shifted = 2.0 * v + (quad - 1.0) * c0

    inner = math.sqrt(max(shifted ** 2 - 8.0 * v * (quad - 1.0) * c0 / cosh ** 2, 0.0))
    outer = math.sqrt(max(shifted ** 2 * cosh ** 2 - quad - 4.0 * v * (quad - 1.0) * c0, 0.0))
    slack = [h + 1.0 / h] * 2 + [
        2.0 * (c0 + 2.0 * v / (quad - 1.0)) * cosh,
        cosh / (quad - 1.0) * (shifted + inner),
        cosh / (quad - 1.0) * (shifted - inner),
    ]
    slack += [(quad - shifted * cosh + outer) / (quad - 1.0)] * 2
    slack += [(quad - shifted * cosh - outer) / (quad - 1.0)] * 2

    denominator = 2.0 * v * cosh - 1.0
    primal = [
        (quad - 1.0) ** 2 * cosh / (2.0 * v * denominator ** 2),
        1.0 + (quad - 1.0) ** 2 / (4.0 * denominator ** 2),
        1.0 + (quad - 1.0) ** 2 / (4.0 * denominator ** 2),
    ]
    return slack, primal


def _pad_sorted(values: list, size: int) -> np.ndarray:
    padded = np.zeros(size)
    padded[: len(values)] = values
    return np.sort(padded)


def _check_c0(v: float, r: float, c0: float) -> None:
    upper = c0_upper_limit(v, r)
    if not (math.isfinite(c0) and -C0_TOL <= c0 <= upper + C0_TOL):
        raise OutOfRangeError('c0 = {} is outside [0, {:.6g}]'.format(c0, upper))


def _check_certificate_domain(v: float, r: float, c0: float) -> None:
    check_tmst_parameters(v, r)
    if v <= VACUUM_VARIANCE:
        raise OutOfRangeError('certificates need v > 1/2')
    _check_c0(v, r, c0)
