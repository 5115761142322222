import json

import pytest

from pyholevo.cli.exceptions import InvariantViolationError
from pyholevo.cli.handle_error import (
    EXIT_INPUT_ERROR,
    EXIT_INVARIANT_VIOLATION,
    EXIT_NUMERICAL_ERROR,
    EXIT_OK,
    handle_error,
)
from pyholevo.exceptions import ArgumentError, NumericalError
from pyholevo.sdp.exceptions import ConvergenceError


def test_handle_error():
    @handle_error
    def func_that_works():
        return EXIT_OK

    assert func_that_works() == EXIT_OK


@pytest.mark.parametrize(
    'error,exit_code,name,message',
    [
        (ArgumentError('Bad input'), EXIT_INPUT_ERROR, 'ArgumentError', 'Bad input.'),
        (
            InvariantViolationError('2 row check(s) failed'),
            EXIT_INVARIANT_VIOLATION,
            'InvariantViolationError',
            'Invariant violated: 2 row check(s) failed.',
        ),
        (NumericalError('Singular'), EXIT_NUMERICAL_ERROR, 'NumericalError', 'Singular.'),
        (RuntimeError('boom'), EXIT_NUMERICAL_ERROR, 'RuntimeError', 'boom'),
    ],
)
def test_handle_error_maps_errors_to_exit_codes(capsys, error, exit_code, name, message):
    @handle_error
    def func_that_raises():
        raise error

    assert func_that_raises() == exit_code

    report = json.loads(capsys.readouterr().err)
    assert report == {'error': name, 'message': message, 'exit_code': exit_code}


def test_handle_error_on_convergence_error(capsys):
    @handle_error
    def func_that_raises_convergence_error():
        raise ConvergenceError('gap 1e-3', residuals={'gap': 1e-3})

    assert func_that_raises_convergence_error() == EXIT_NUMERICAL_ERROR

    report = json.loads(capsys.readouterr().err)
    assert report['message'] == 'SDP solver did not converge: gap 1e-3.'
    assert report['residuals'] == {'gap': 1e-3}


def test_handle_error_logs_unexpected_errors(mocker):
    mock_logger = mocker.patch('pyholevo.cli.handle_error._logger')

    @handle_error
    def func_that_raises_unexpected_error():
        raise KeyError('missing')

    assert func_that_raises_unexpected_error() == EXIT_NUMERICAL_ERROR
    mock_logger.exception.assert_called_once_with('Unexpected error')
