"""
Squeezing sweeps of the symmetric two-mode squeezed thermal probe, written as CSV.
"""

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from pyholevo.bounds.fisher_bounds import fisher_bounds
from pyholevo.closed_form.tmst_solution import (
    REGIME_BELOW,
    double_homodyne_mse,
    holevo_bound_closed,
    regime,
    transmission,
)
from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian.entanglement import is_entangled
from pyholevo.gaussian.euclidean_frame import orthonormal_frame
from pyholevo.gaussian.probe_model import symmetric_tmst_probe
from pyholevo.sdp.holevo_bound import holevo_bound
from pyholevo.utils.file_utils import write_text_to_file

_logger = logging.getLogger(__name__)

HEADER = ['v', 'r', 'holevo_sdp', 'holevo_closed', 'sld', 'rld', 'dual_gap', 't', 'entangled']
HOMODYNE_COLUMN = 'double_homodyne'

CLOSED_FORM_AGREEMENT_TOL = 1e-6
HIERARCHY_TOL = 1e-7


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a sweep. ``t`` is NaN where no passive circuit exists."""

    v: float
    r: float
    holevo_sdp: float
    holevo_closed: float
    sld: float
    rld: float
    dual_gap: float
    t: float
    entangled: bool
    double_homodyne: Optional[float] = None

    def violations(self) -> List[str]:
        """Returns the failed consistency checks of this row."""
        problems = []
        if abs(self.holevo_sdp - self.holevo_closed) > CLOSED_FORM_AGREEMENT_TOL:
            problems.append(
                'r={:.17g}: SDP bound {:.17g} differs from closed form {:.17g}'.format(
                    self.r, self.holevo_sdp, self.holevo_closed
                )
            )
        lower = max(value for value in (self.sld, self.rld) if not math.isnan(value))
        if self.holevo_sdp < lower - HIERARCHY_TOL:
            problems.append(
                'r={:.17g}: SDP bound {:.17g} is below the Fisher bound {:.17g}'.format(
                    self.r, self.holevo_sdp, lower
                )
            )
        return problems

    def values(self, with_homodyne: bool = False) -> List[str]:
        cells = [
            _format_float(self.v),
            _format_float(self.r),
            _format_float(self.holevo_sdp),
            _format_float(self.holevo_closed),
            _format_float(self.sld),
            _format_float(self.rld),
            _format_float(self.dual_gap),
            _format_float(self.t),
            'true' if self.entangled else 'false',
        ]
        if with_homodyne:
            cells.append(_format_float(self.double_homodyne))
        return cells


def sweep_grid(r_min: float, r_max: float, steps: int) -> List[float]:
    """Returns ``steps`` evenly spaced squeezing values from r_min to r_max inclusive.

    Examples:
        >>> sweep_grid(0.0, 1.0, 3)
        [0.0, 0.5, 1.0]
    """
    if not (isinstance(steps, int) and steps >= 1):
        raise ArgumentError('Number of steps must be a positive integer')
    if not (math.isfinite(r_min) and math.isfinite(r_max) and 0.0 <= r_min <= r_max):
        raise ArgumentError('Squeezing range must satisfy 0 <= r_min <= r_max')
    if steps == 1:
        return [float(r_min)]
    return [float(value) for value in np.linspace(r_min, r_max, steps)]


def sweep_row(
    v: float, r: float, tol: Optional[float] = None, with_homodyne: bool = False
) -> SweepRow:
    """Computes every column of one grid point."""
    frame = orthonormal_frame(symmetric_tmst_probe(v, r))
    result = holevo_bound(frame, tol=tol)
    fisher = fisher_bounds(frame)
    return SweepRow(
        v=v,
        r=r,
        holevo_sdp=result.sigma_star,
        holevo_closed=holevo_bound_closed(v, r),
        sld=fisher.c_sld,
        rld=fisher.c_rld,
        dual_gap=result.certificate.gap,
        t=transmission(v, r) if regime(v, r) == REGIME_BELOW else math.nan,
        entangled=is_entangled(v, r),
        double_homodyne=double_homodyne_mse(v, r) if with_homodyne else None,
    )


def run_sweep(
    v: float,
    r_values: Sequence[float],
    tol: Optional[float] = None,
    workers: Optional[int] = None,
    with_homodyne: bool = False,
) -> List[SweepRow]:
    """Evaluates the grid in parallel and returns the rows in grid order."""
    _logger.info('Sweeping {} squeezing value(s) at v = {}'.format(len(r_values), v))
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(
            executor.map(lambda r: sweep_row(v, r, tol=tol, with_homodyne=with_homodyne), r_values)
        )


def check_rows(rows: Sequence[SweepRow]) -> List[str]:
    """Returns the violations of every row, logging each one."""
    problems = [problem for row in rows for problem in row.violations()]
    for problem in problems:
        _logger.warning(problem)
    return problems


def format_rows(rows: Sequence[SweepRow], with_homodyne: bool = False) -> str:
    """Renders rows as CSV with 17 significant digits."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(HEADER + ([HOMODYNE_COLUMN] if with_homodyne else []))
    for row in rows:
        writer.writerow(row.values(with_homodyne))
    return buffer.getvalue()


def write_sweep(path: str, rows: Sequence[SweepRow], with_homodyne: bool = False) -> None:
    """Writes the CSV file.

    Raises:
        StoreFileError: If the file cannot be written.
    """
    write_text_to_file(path, format_rows(rows, with_homodyne))


def _format_float(value: Optional[float]) -> str:
    if value is None or math.isnan(value):
        return 'nan'
    return '%.17g' % value
