import math

import pytest

from pyholevo.cli.sweep import (
    HEADER,
    SweepRow,
    check_rows,
    format_rows,
    run_sweep,
    sweep_grid,
    sweep_row,
    write_sweep,
)
from pyholevo.closed_form.tmst_solution import holevo_bound_closed
from pyholevo.exceptions import ArgumentError


def _row(**kwargs):
    data = {
        'v': 1.0,
        'r': 0.5,
        'holevo_sdp': 1.5,
        'holevo_closed': 1.5,
        'sld': 1.2,
        'rld': 1.1,
        'dual_gap': 1e-10,
        't': math.nan,
        'entangled': True,
    }
    data.update(kwargs)
    return SweepRow(**data)


def test_sweep_grid():
    assert sweep_grid(0.0, 1.0, 5) == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert sweep_grid(0.3, 0.3, 1) == [0.3]


@pytest.mark.parametrize(
    'args,expected',
    [
        ((0.0, 1.0, 0), 'Number of steps must be a positive integer.'),
        ((1.0, 0.5, 3), 'Squeezing range must satisfy 0 <= r_min <= r_max.'),
        ((-0.1, 0.5, 3), 'Squeezing range must satisfy 0 <= r_min <= r_max.'),
    ],
)
def test_invalid_sweep_grid(args, expected):
    with pytest.raises(ArgumentError) as exception:
        sweep_grid(*args)

    assert str(exception.value) == expected


def test_sweep_row_below_threshold():
    row = sweep_row(1.0, 0.0, with_homodyne=True)

    assert abs(row.holevo_sdp - 3.0) <= 1e-6
    assert row.holevo_closed == 3.0
    assert math.isclose(row.t, 0.5)
    assert not row.entangled
    assert row.double_homodyne == 4.0
    assert row.violations() == []


def test_sweep_row_above_threshold():
    row = sweep_row(1.0, 0.8)

    assert abs(row.holevo_sdp - holevo_bound_closed(1.0, 0.8)) <= 1e-6
    assert math.isnan(row.t)
    assert row.entangled
    assert row.double_homodyne is None


def test_sweep_row_of_vacuum_probe_has_no_rld():
    row = sweep_row(0.5, 0.4)

    assert math.isnan(row.rld)
    assert row.violations() == []


def test_row_violations():
    row = _row(holevo_sdp=1.0, holevo_closed=1.5, sld=1.2)

    assert row.violations() == [
        'r=0.5: SDP bound 1 differs from closed form 1.5',
        'r=0.5: SDP bound 1 is below the Fisher bound 1.2',
    ]


def test_check_rows_logs_violations(mocker):
    mock_logger = mocker.patch('pyholevo.cli.sweep._logger')

    problems = check_rows([_row(), _row(holevo_closed=2.0)])

    assert problems == ['r=0.5: SDP bound 1.5 differs from closed form 2']
    mock_logger.warning.assert_called_once_with(problems[0])


def test_run_sweep_keeps_grid_order():
    grid = [0.6, 0.0, 0.3]

    rows = run_sweep(1.0, grid, workers=2)

    assert [row.r for row in rows] == grid


def test_format_rows():
    text = format_rows([_row(), _row(r=0.25, t=0.75, entangled=False)], with_homodyne=False)

    lines = text.split('\n')
    assert lines[0] == ','.join(HEADER)
    assert lines[1] == '1,0.5,1.5,1.5,1.2,1.1000000000000001,1e-10,nan,true'
    assert lines[2] == '1,0.25,1.5,1.5,1.2,1.1000000000000001,1e-10,0.75,false'
    assert lines[3] == ''


def test_format_rows_with_homodyne():
    text = format_rows([_row(double_homodyne=1.25)], with_homodyne=True)

    header, row = text.split('\n')[:2]
    assert header.endswith(',entangled,double_homodyne')
    assert row.endswith(',true,1.25')


def test_write_sweep(tmpdir):
    path = str(tmpdir.join('sweep.csv'))

    write_sweep(path, [_row()])

    with open(path, 'r', encoding='utf-8') as csv_file:
        assert csv_file.read() == format_rows([_row()])
