import json

import pytest

from Discrepz.cli import main

TRIANGLE = {'n': 3, 'sets': [[0, 1], [1, 2], [0, 2]]}
TOY = {'delta': 2, 'alpha': '1/4', 'tw': [2, 2], 'beta': [8, 8], 'w': 1}


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def stdout_json(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines()]


def test_classic_run_then_verify(tmp_path, capsys):
    inst = write(tmp_path / 'tri.json', TRIANGLE)
    assert main(['run', '--mode', 'classic', '--input', inst]) == 0
    doc, = stdout_json(capsys)
    assert len(doc['colors']) == 3
    assert doc['discrepancy'] <= 2

    coloring = write(tmp_path / 'colors.json', doc)
    assert main(['verify', '--input', inst, '--coloring', coloring]) == 0
    report, = stdout_json(capsys)
    assert report['discrepancy'] == doc['discrepancy']


def test_verify_examples(tmp_path, capsys):
    inst = write(tmp_path / 'tri.json', TRIANGLE)
    assert main(['verify', '--input', inst, '--coloring', write(tmp_path / 'c.json', [1, -1, 1])]) == 0
    assert stdout_json(capsys) == [{'per_set': [0, 0, 2], 'discrepancy': 2}]
    assert main(['verify', '--input', inst, '--coloring', write(tmp_path / 'z.json', [1, 0, 1])]) == 2
    assert main(['verify', '--input', inst, '--coloring', write(tmp_path / 's.json', [1, 1])]) == 2


def test_cohort_paper_profile_is_infeasible(tmp_path, capsys):
    inst = write(tmp_path / 'tri.json', TRIANGLE)
    assert main(['run', '--mode', 'cohort', '--profile', 'paper', '--input', inst]) == 3
    assert 'infeasible' in capsys.readouterr().err


def test_cohort_run_with_trace(tmp_path, capsys):
    inst = write(tmp_path / 'path.json', {'n': 3, 'sets': [[0, 1], [1, 2]]})
    profile = write(tmp_path / 'toy.json', TOY)
    trace = tmp_path / 'out' / 'trace.jsonl'
    snapshot = tmp_path / 'state.json'
    assert main(['run', '--input', inst, '--profile', profile, '--check-invariants', 'per-step',
                 '--trace', str(trace), '--snapshot', str(snapshot)]) == 0
    doc, = stdout_json(capsys)
    assert doc['discrepancy'] <= 2
    assert len(trace.read_text().splitlines()) == 5
    assert json.loads(snapshot.read_text())['benign'] == [0, 1]

    assert main(['inspect-trace', str(trace)]) == 0
    summary, = stdout_json(capsys)
    assert summary['potential_monotone'] is True
    assert summary['histogram'] == {'1': 2, '8': 3}
    assert summary['frozen_profile'] == [0, 0, 1, 2, 3]


def test_profile_from_environment(tmp_path, capsys, monkeypatch):
    inst = write(tmp_path / 'path.json', {'n': 3, 'sets': [[0, 1], [1, 2]]})
    monkeypatch.setenv('DISCREPZ_PROFILE', write(tmp_path / 'toy.json', TOY))
    assert main(['run', '--input', inst]) == 0


def test_step_cap_exit_code(tmp_path, capsys):
    inst = write(tmp_path / 'path.json', {'n': 3, 'sets': [[0, 1], [1, 2]]})
    profile = write(tmp_path / 'toy.json', TOY)
    trace = tmp_path / 'partial.jsonl'
    assert main(['run', '--input', inst, '--profile', profile, '--step-cap', '2', '--trace', str(trace)]) == 5
    assert len(trace.read_text().splitlines()) == 2


def test_batch_run(tmp_path, capsys):
    a = write(tmp_path / 'a.json', TRIANGLE)
    b = write(tmp_path / 'b.json', {'n': 4, 'sets': [[0, 1], [2, 3]]})
    assert main(['run', '--mode', 'classic', '--input', a, b, '--jobs', '2']) == 0
    docs = stdout_json(capsys)
    assert [d['input'] for d in docs] == [a, b]
    assert docs[1]['discrepancy'] <= 1


def test_gen_and_oracle(tmp_path, capsys):
    assert main(['gen', '--kind', 'random-bounded-degree', '--n', '12', '--sets', '6', '--d', '3',
                 '--seed', '1']) == 0
    doc, = stdout_json(capsys)
    assert doc['n'] == 12
    inst = write(tmp_path / 'g.json', doc)
    assert main(['oracle', '--input', inst, '--coloring']) == 0
    out, = stdout_json(capsys)
    assert len(out['colors']) == 12
    assert main(['oracle', '--input', write(tmp_path / 'tri.json', TRIANGLE)]) == 0
    assert stdout_json(capsys) == [{'discrepancy': 2}]
    assert main(['oracle', '--input', inst, '--cap', '4']) == 2


def test_gen_infeasible(capsys):
    assert main(['gen', '--kind', 'near-regular', '--n', '5', '--sets', '2', '--d', '3']) == 2


def test_check_constants(tmp_path, capsys):
    assert main(['check-constants', '--d', '65536']) == 0
    captured = capsys.readouterr()
    doc = json.loads(captured.out)
    assert doc['profile']['delta'] == 4
    assert doc['feasible'] is False
    assert 'W = 0 < 1' in captured.err

    assert main(['check-constants', '--d', '4', '--profile', write(tmp_path / 'toy.json', TOY)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['feasible'] is True

    bad = tmp_path / 'bad.json'
    bad.write_text('{"delta": ')
    assert main(['check-constants', '--d', '4', '--profile', str(bad)]) == 2


def test_check_constants_needs_an_argument():
    with pytest.raises(SystemExit) as e:
        main(['check-constants'])
    assert e.value.code == 2
