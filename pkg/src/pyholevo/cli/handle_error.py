import functools
import json
import logging
import sys
from typing import Any, Callable, Dict, Optional

from pyholevo.cli.exceptions import InvariantViolationError
from pyholevo.exceptions import ArgumentError, PyHolevoError
from pyholevo.sdp.exceptions import ConvergenceError

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_ERROR = 3
EXIT_INVARIANT_VIOLATION = 4


def handle_error(func: Callable[..., int]) -> Callable[..., int]:
    """Turns library errors raised by a command into an exit code and a JSON report on stderr.

    ``ArgumentError`` maps to 2, ``InvariantViolationError`` to 4 and every
    other failure to 3.
    """

    @functools.wraps(func)
    def wrapper(*args: Any, **kw: Any) -> int:
        try:
            return func(*args, **kw)
        except InvariantViolationError as ie:
            return _report(EXIT_INVARIANT_VIOLATION, ie)
        except ArgumentError as ae:
            return _report(EXIT_INPUT_ERROR, ae)
        except ConvergenceError as ce:
            return _report(EXIT_NUMERICAL_ERROR, ce, {'residuals': ce.residuals})
        except PyHolevoError as pe:
            return _report(EXIT_NUMERICAL_ERROR, pe)
        except Exception as e:
            _logger.exception('Unexpected error')
            return _report(EXIT_NUMERICAL_ERROR, e)

    return wrapper


def _report(exit_code: int, error: Exception, extra: Optional[Dict[str, Any]] = None) -> int:
    report = {'error': type(error).__name__, 'message': str(error), 'exit_code': exit_code}
    report.update(extra or {})
    sys.stderr.write(json.dumps(report, sort_keys=True) + '\n')
    return exit_code
