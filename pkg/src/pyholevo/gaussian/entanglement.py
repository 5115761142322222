"""
Duan inseparability test for the symmetric two-mode squeezed thermal probe.
"""

import math

from pyholevo.gaussian.probe_model import check_tmst_parameters

# Separable states satisfy Var(Q1 + Q2) + Var(P1 - P2) >= 2 with vacuum variance 1/2.
# Squeezing here correlates Q1 with -Q2 and P1 with P2 (see tmst_covariance). With the
# opposite phase on mode 2 the same sum reads Var(Q1 - Q2) + Var(P1 + P2).
DUAN_SEPARABLE_LIMIT = 2.0


def threshold_squeezing(v: float) -> float:
    """Returns r0 = log(2v)/2, the squeezing above which the probe is entangled.

    Examples:
        >>> threshold_squeezing(0.5)
        0.0
    """
    check_tmst_parameters(v, 0.0)
    return 0.5 * math.log(2.0 * v)


def duan_sum(v: float, r: float) -> float:
    """Returns Var(Q1 + Q2) + Var(P1 - P2) = 4v e^-2r of the probe before the beam splitter.

    The squeezed combinations follow the sign of ``Cov(Q1, Q2) = -v sinh 2r``
    in :func:`pyholevo.simulation.optics.tmst_covariance`. Rotating mode 2 by
    pi turns them into the form ``Var(Q1 - Q2) + Var(P1 + P2)``; the value is unchanged.

    Args:
        v: Thermal variance, at least 1/2.
        r: Squeezing parameter, non-negative.

    Raises:
        InvalidStateError: If v < 1/2.
        ArgumentError: If r < 0.
    """
    check_tmst_parameters(v, r)
    return 4.0 * v * math.exp(-2.0 * r)


def is_entangled(v: float, r: float) -> bool:
    """Checks Duan's criterion ``duan_sum(v, r) < 2``.

    Evaluated as ``r > r0``.
    """
    check_tmst_parameters(v, r)
    return r > threshold_squeezing(v)
