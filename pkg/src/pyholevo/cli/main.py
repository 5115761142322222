"""
Command-line entry point: ``holevo bound|sweep|simulate|verify``.

Reports are JSON on stdout, errors are JSON on stderr. Exit codes: 0 success,
2 input error, 3 numerical failure, 4 failed check.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from pyholevo.bounds.fisher_bounds import fisher_bounds
from pyholevo.cli.exceptions import InvariantViolationError
from pyholevo.cli.handle_error import EXIT_INVARIANT_VIOLATION, EXIT_OK, handle_error
from pyholevo.cli.sweep import check_rows, run_sweep, sweep_grid, write_sweep
from pyholevo.closed_form.tmst_solution import (
    certificate_closed,
    closed_form_solution,
    holevo_bound_closed,
    tmst_sdp,
    transmission,
)
from pyholevo.config import Config, ConfigSetter
from pyholevo.exceptions import ArgumentError
from pyholevo.gaussian.euclidean_frame import CHOLESKY_BASIS, EIGEN_BASIS, orthonormal_frame
from pyholevo.gaussian.probe_model import ProbeModel, symmetric_tmst_probe
from pyholevo.measurement.measurement_plan import MeasurementPlan, extract_plan
from pyholevo.sdp.certificate import verify_certificate
from pyholevo.sdp.holevo_bound import holevo_bound
from pyholevo.simulation.montecarlo import (
    DOUBLE_UNBALANCED_HETERODYNE,
    SCHEMES,
    CircuitSpec,
    simulate,
)

_logger = logging.getLogger(__name__)

METHOD_SDP = 'sdp'
METHOD_CLOSED = 'closed'
METHOD_ALL = 'all'

# Attainment is judged within this many standard errors.
ATTAINMENT_SIGMAS = 4.0

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='holevo',
        description='Holevo Cramer-Rao bound of Gaussian displacement estimation.',
    )
    parser.add_argument(
        '--log-level',
        default='WARNING',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='logging threshold for messages on stderr',
    )
    parser.add_argument('--workers', type=int, help='worker threads for sweeps and simulations')
    commands = parser.add_subparsers(dest='command', required=True)

    bound = commands.add_parser('bound', help='compute the bound of one probe')
    _add_probe_arguments(bound)
    bound.add_argument(
        '--method', default=METHOD_SDP, choices=[METHOD_SDP, METHOD_CLOSED, METHOD_ALL]
    )
    bound.add_argument('--basis', default=CHOLESKY_BASIS, choices=[CHOLESKY_BASIS, EIGEN_BASIS])
    bound.add_argument('--tol', type=float, help='solver duality gap tolerance')
    bound.set_defaults(handler=cmd_bound)

    sweep = commands.add_parser('sweep', help='tabulate bounds over a squeezing grid as CSV')
    sweep.add_argument('--v', type=float, required=True)
    sweep.add_argument('--r-min', type=float, required=True)
    sweep.add_argument('--r-max', type=float, required=True)
    sweep.add_argument('--steps', type=int, required=True)
    sweep.add_argument('--out', required=True, help='CSV output path')
    sweep.add_argument('--with-homodyne', action='store_true', help='add the double-homodyne MSE')
    sweep.add_argument('--strict', action='store_true', help='fail on any row inconsistency')
    sweep.add_argument('--tol', type=float, help='solver duality gap tolerance')
    sweep.set_defaults(handler=cmd_sweep)

    simulation = commands.add_parser('simulate', help='Monte Carlo run of a measurement circuit')
    simulation.add_argument('--scheme', required=True, choices=list(SCHEMES))
    simulation.add_argument('--v', type=float, required=True)
    simulation.add_argument('--r', type=float, required=True)
    simulation.add_argument('--t', type=float, help='transmission; defaults to the optimal one')
    simulation.add_argument('--theta', type=float, nargs=2, default=[0.0, 0.0])
    simulation.add_argument('--shots', type=int, default=1000000)
    simulation.add_argument('--seed', type=int, default=0)
    simulation.add_argument('--batch-size', type=int, default=100000)
    simulation.set_defaults(handler=cmd_simulate)

    verify = commands.add_parser('verify', help='check an optimality certificate')
    _add_probe_arguments(verify)
    verify.add_argument(
        '--closed-form', action='store_true', help='check the analytic certificate'
    )
    verify.add_argument('--c0', type=float, default=0.0, help='analytic optimizer family member')
    verify.add_argument('--tol', type=float, help='certificate tolerance')
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Runs one command and returns its exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format=LOG_FORMAT, stream=sys.stderr)
    return _dispatch(args)


def run() -> None:
    sys.exit(main())


@handle_error
def _dispatch(args: argparse.Namespace) -> int:
    config = ConfigSetter(solver_tol=getattr(args, 'tol', None), workers=args.workers).get_config()
    return args.handler(args, config)


def cmd_bound(args: argparse.Namespace, config: Config) -> int:
    """Prints the bound, its optimizer, the optimal plan and the certificate residuals."""
    model, tmst = _probe(args)
    report: Dict[str, Any] = {'method': args.method, 'basis': args.basis}
    if args.method in (METHOD_CLOSED, METHOD_ALL) and tmst is None:
        raise ArgumentError(
            'The closed form only applies to the symmetric probe given by --v and --r'
        )

    frame = orthonormal_frame(model, args.basis)
    fisher = fisher_bounds(frame)
    report['sld'] = fisher.c_sld
    report['rld'] = fisher.c_rld

    if args.method in (METHOD_SDP, METHOD_ALL):
        result = holevo_bound(frame, tol=config.solver_tol)
        report['sigma_star'] = result.sigma_star
        report['f_opt'] = result.f_opt
        report['f_reduced'] = result.f_reduced
        report['certificate'] = result.report.to_dict()
        report['iterations'] = result.certificate.iterations
        plan = extract_plan(frame, result.f_opt)
    if args.method in (METHOD_CLOSED, METHOD_ALL):
        v, r = tmst
        solution = closed_form_solution(v, r)
        report['sigma_closed'] = solution.sigma_star
        report['regime'] = solution.regime
        report['r0'] = solution.r0
        if args.method == METHOD_CLOSED:
            report['sigma_star'] = solution.sigma_star
            report['f_opt'] = solution.f_opt
            # The analytic optimizer is written in the diagonal basis, which is the Cholesky one.
            plan = extract_plan(orthonormal_frame(model), solution.f_opt)

    report['plan'] = _plan_report(plan)
    _print_json(report)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, config: Config) -> int:
    """Writes the sweep CSV; with --strict any inconsistent row is fatal."""
    grid = sweep_grid(args.r_min, args.r_max, args.steps)
    rows = run_sweep(
        args.v,
        grid,
        tol=config.solver_tol,
        workers=config.workers,
        with_homodyne=args.with_homodyne,
    )
    problems = check_rows(rows)
    write_sweep(args.out, rows, with_homodyne=args.with_homodyne)
    _print_json({'out': args.out, 'rows': len(rows), 'violations': problems})
    if problems and args.strict:
        raise InvariantViolationError('{} row check(s) failed'.format(len(problems)))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, config: Config) -> int:
    """Runs the simulation; exits 0 iff the empirical MSE is within 4 standard errors of the bound."""
    t = args.t
    if t is None:
        t = transmission(args.v, args.r) if args.scheme == DOUBLE_UNBALANCED_HETERODYNE else 1.0
    spec = CircuitSpec(
        scheme=args.scheme,
        v=args.v,
        r=args.r,
        t=t,
        theta=(args.theta[0], args.theta[1]),
        shots=args.shots,
        seed=args.seed,
        batch_size=args.batch_size,
        workers=config.workers,
    )
    result = simulate(spec)
    bound = holevo_bound_closed(args.v, args.r)
    attained = abs(result.empirical_mse_sum - bound) <= ATTAINMENT_SIGMAS * result.standard_error

    report = {
        'scheme': spec.scheme,
        'v': spec.v,
        'r': spec.r,
        't': spec.t,
        'theta': list(spec.theta),
        'shots': spec.shots,
        'seed': spec.seed,
        'bound_reference': bound,
        'attains_bound': attained,
    }
    report.update(result.to_dict())
    _print_json(report)
    return EXIT_OK if attained else EXIT_INVARIANT_VIOLATION


def cmd_verify(args: argparse.Namespace, config: Config) -> int:
    """Checks a certificate; exits 0 iff the verdict is optimal."""
    tol = args.tol if args.tol is not None else config.solver_tol
    if args.closed_form:
        if args.probe_file:
            raise ArgumentError('--closed-form needs --v and --r')
        y, x_blocks = certificate_closed(args.v, args.r, args.c0)
        report = verify_certificate(tmst_sdp(args.v, args.r), x_blocks, y, tol=tol)
        source = 'closed_form'
    else:
        model, _ = _probe(args)
        result = holevo_bound(orthonormal_frame(model), tol=tol)
        report = verify_certificate(
            result.problem, result.certificate.x_blocks, result.certificate.y, tol=tol
        )
        source = 'solver'

    _print_json(dict(report.to_dict(), source=source))
    return EXIT_OK if report.is_optimal() else EXIT_INVARIANT_VIOLATION


def _add_probe_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--v', type=float, help='thermal variance of the symmetric probe')
    parser.add_argument('--r', type=float, help='two-mode squeezing of the symmetric probe')
    parser.add_argument('--probe-file', help='probe model JSON file')


def _probe(args: argparse.Namespace) -> Tuple[ProbeModel, Optional[Tuple[float, float]]]:
    """Returns (model, (v, r)) for the symmetric probe, or (model, None) for a probe file."""
    if args.probe_file:
        if args.v is not None or args.r is not None:
            raise ArgumentError('Give either --probe-file or --v and --r, not both')
        return ProbeModel.load(args.probe_file), None
    if args.v is None or args.r is None:
        raise ArgumentError('Give either --probe-file or both --v and --r')
    return symmetric_tmst_probe(args.v, args.r), (args.v, args.r)


def _plan_report(plan: MeasurementPlan) -> Dict[str, Any]:
    report = plan.to_dict()
    report['circuit'] = plan.circuit.to_dict() if plan.circuit else None
    report['commutators'] = plan.commutators.tolist()
    return report


def _print_json(report: Dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True, default=_to_json) + '\n')


def _to_json(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError('Cannot serialize {}'.format(type(value).__name__))

