import json
import logging

import pytest
from sympy.polys.domains import QQ

from Discrepz.constants import manual_profile
from Discrepz.setsystem import SetSystem
from Discrepz.solvers import Opt, StepRecord, cohort_bf, classic_beck_fiala
from Discrepz.utilities.errors import InstanceError, ProfileError, SeedNotFoundError
from Discrepz.utilities.io import (read_instance, read_coloring, read_profile, read_trace, write_trace, trace_line,
                                   trace_frame, inspect_trace)
from Discrepz.utilities.profile import count_time
from Discrepz.utilities.type_checker import as_rational, format_rational


def test_read_documents(tmp_path):
    inst = tmp_path / 'inst.json'
    inst.write_text('{"n": 3, "sets": [[2, 0], [1]]}')
    assert read_instance(inst) == SetSystem(3, [[0, 2], [1]])

    colors = tmp_path / 'colors.json'
    colors.write_text('{"colors": [1, -1, 1], "discrepancy": 2}')
    assert read_coloring(colors) == [1, -1, 1]

    profile = tmp_path / 'profile.json'
    profile.write_text(json.dumps({'delta': 2, 'alpha': '1/4', 'tw': [2, 2], 'beta': [8, 8], 'w': 1}))
    assert read_profile(profile) == manual_profile(2, w=1, tw=[2, 2], beta=[8, 8])


def test_read_errors(tmp_path):
    with pytest.raises(InstanceError, match='Cannot read'):
        read_instance(tmp_path / 'missing.json')
    bad = tmp_path / 'bad.json'
    bad.write_text('{"n": 3,')
    with pytest.raises(InstanceError, match='Malformed JSON'):
        read_instance(bad)
    with pytest.raises(ProfileError):
        read_profile(bad)
    bad.write_text('{"n": 3}')
    with pytest.raises(InstanceError):
        read_coloring(bad)


def test_trace_file(tmp_path):
    sys = SetSystem(3, [[0, 1], [1, 2]])
    result = cohort_bf(sys, manual_profile(2, w=1, tw=[2, 2], beta=[8, 8]), Opt(trace=True))
    path = tmp_path / 'run' / 'trace.jsonl'
    write_trace(path, result.trace)
    lines = path.read_text().splitlines()
    assert lines[0] == trace_line(result.trace[0])
    assert ' ' not in lines[0]
    assert read_trace(path) == result.trace

    path.write_text(lines[0] + '\n{"stage": 2}\n')
    with pytest.raises(InstanceError, match=':2:'):
        read_trace(path)


def test_inspect_flags_falling_potential():
    trace = [StepRecord(1, 8, {}, 0, 1, 1, 'pass'),
             StepRecord(2, 5, {}, 1, 0, 0, 'pass'),
             StepRecord(3, 1, {}, 0, 0, 0, 'fail'),
             StepRecord(4, 9, {}, 0, 0, 0, 'pass'),
             StepRecord(5, 9, {}, 0, 1, 0, 'pass')]
    summary = inspect_trace(trace)
    assert summary['potential_monotone'] is False
    # a cohort with W = 1 leaves the potential flat
    assert summary['non_increasing_stages'] == [3, 4]
    assert summary['histogram'] == {'1': 1, '5': 1, '8': 1, '9': 2}
    assert summary['frozen_profile'] == [1, 1, 1, 1, 1]
    assert summary['invariant_failures'] == 1
    assert list(trace_frame(trace)['stage']) == [1, 2, 3, 4, 5]


def test_error_format():
    e = SeedNotFoundError('no banner', pending=3)
    assert e.exit_code == 4
    assert e.format() == '[step9-abort] no banner (pending=3)'
    assert isinstance(e, RuntimeError)


def test_rationals():
    assert as_rational('3/4') == QQ(3, 4)
    assert format_rational(QQ(-6, 8)) == '-3/4'
    assert format_rational(QQ(4, 2)) == '2'
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError):
        as_rational('x/2')


def test_count_time_logs(caplog):
    @count_time
    def twice(x):
        return 2 * x

    with caplog.at_level(logging.DEBUG, logger='Discrepz.utilities.profile'):
        assert twice(3) == 6
    assert 'twice' in caplog.text


def test_count_time_records_elapsed():
    sol = classic_beck_fiala(SetSystem(2, [[0, 1]]))
    assert sol.stats.elapsed is not None and sol.stats.elapsed >= 0
