import pytest
from sympy.polys.domains import QQ

from Discrepz.constants import manual_profile
from Discrepz.setsystem import SetSystem, FloatingColoring
from Discrepz.state import AlgorithmState, Cohort, init_state
from Discrepz.solvers import (Opt, build_equations, row_count, guard, select_step, apply_step, execute,
                              find_seed, seed_violations, nearly_frozen_sets, CohortSeed, charge_ledger,
                              charge_diagnostics, round_residual)
from Discrepz.utilities.errors import EngineError


def toy_profile():
    return manual_profile(2, w=1, tw=[2, 2], beta=[8, 8])


def make_state(sys, chi, pool=(), benign=(), cohorts=(), defeats=None):
    return AlgorithmState(sys, toy_profile(), FloatingColoring(chi), set(benign), set(pool), list(cohorts),
                          dict(defeats or {}))


def test_cohort_row_clamps_banner():
    sys = SetSystem(3, [[0, 1], [1, 2]])
    cur = make_state(sys, [0, 0, 0], pool=[1], cohorts=[Cohort([0], 1, 1, 0)], defeats={0: 0})
    lin = build_equations(cur)
    assert lin.labels == ['pool:1', 'cohort:0:0']
    coeffs, rhs = lin.rows[1]
    assert coeffs == {0: 1, 1: 9}
    assert rhs == 0
    assert row_count(cur) == 2

    cur.chi = FloatingColoring([QQ(1, 2), QQ(1, 4), 0])
    lin = build_equations(cur)
    assert lin.rows[1][1] == QQ(11, 4)
    assert all(r == 0 for r in lin.residuals(cur.chi))


def test_edge_row():
    sys = SetSystem(3, [[0, 2], [1, 2]])
    cur = make_state(sys, [0, 0, 0], cohorts=[Cohort([0, 1], 2, -1, 0, [(0, 1)])], defeats={0: 0, 1: 0})
    lin = build_equations(cur)
    assert lin.labels == ['edge:0:0-1']
    assert lin.rows[0][0] == {0: 1, 1: 1, 2: 18}
    assert row_count(cur) == 1


def test_move_benign_pool_set():
    sys = SetSystem(3, [[0, 1, 2], [0]])
    cur = init_state(sys, toy_profile())
    assert select_step(cur) == (1, {'set': 1})
    nxt = apply_step(cur, 1, {'set': 1})
    assert nxt.benign == {1}
    assert cur.benign == set()


def test_round_safe_element():
    sys = SetSystem(5, [[0, 1, 2, 3], [0, 4]])
    cur = make_state(sys, [0, 0, 0, 0, QQ(7, 8)], pool=[0, 1])
    assert guard(3, cur) == {'element': 4, 'sign': 1}
    nxt = apply_step(cur, 3, {'element': 4, 'sign': 1})
    assert nxt.chi[4] == 1
    assert cur.chi[4] == QQ(7, 8)


def test_round_blocked_by_large_pool_set():
    sys = SetSystem(5, [[0, 1, 2, 3], [0, 4]])
    for v in (QQ(7, 8), QQ(-7, 8)):
        cur = make_state(sys, [v, 0, 0, 0, 0], pool=[0, 1])
        assert guard(3, cur) is None


def test_round_needs_strict_threshold():
    sys = SetSystem(5, [[0, 1, 2, 3], [0, 4]])
    cur = make_state(sys, [0, 0, 0, 0, QQ(3, 4)], pool=[0, 1])
    assert guard(3, cur) is None


def test_remove_empty_cohort():
    sys = SetSystem(2, [[0, 1]])
    cur = make_state(sys, [0, 0], benign=[0], cohorts=[Cohort([], 1, 1, 0)])
    assert guard(2, cur) == {'cohort': 0}
    assert apply_step(cur, 2, {'cohort': 0}).cohorts == []


def _matched_state(chi_banner):
    sys = SetSystem(6, [[0, 5], [1, 5]])
    return make_state(sys, [1, -1, 0, 0, 0, chi_banner], cohorts=[Cohort([0, 1], 5, 1, 0, [(0, 1)])],
                      defeats={0: 0, 1: 0})


def test_disband_on_frozen_banner():
    cur = _matched_state(1)
    witness = guard(5, cur)
    assert witness == {'cohort': 0, 'banner': 5}
    nxt = apply_step(cur, 5, witness)
    assert nxt.cohorts == []
    assert nxt.pool == {0, 1}
    assert nxt.defeats == {}
    assert witness['members'] == [0, 1]
    assert nxt.partition_ok()


def test_finish_match_tie_goes_to_lower_index():
    cur = _matched_state(QQ(1, 2))
    witness = guard(6, cur)
    assert witness == {'cohort': 0, 'edge': [0, 1], 'survivor': 0, 'loser': 1}
    nxt = apply_step(cur, 6, witness)
    # the survivor has Th = 2 = 2d - delta and leaves with the loser
    assert nxt.cohorts[0].members == set()
    assert nxt.cohorts[0].matching == set()
    assert nxt.benign == {0, 1}
    assert nxt.defeats == {}
    assert witness['survivor_benign'] is True
    assert nxt.partition_ok()


def test_finish_match_needs_equal_defeats():
    cur = _matched_state(QQ(1, 2))
    cur.defeats = {0: 0, 1: 1}
    assert guard(6, cur) is None


def test_match_unmatched_sets():
    sys = SetSystem(6, [[0, 5], [1, 5]])
    cur = make_state(sys, [0, 0, 0, 0, 0, QQ(1, 2)], cohorts=[Cohort([0, 1], 5, 1, 0)], defeats={0: 0, 1: 0})
    assert guard(7, cur) == {'cohort': 0, 'edge': [0, 1]}
    nxt = apply_step(cur, 7, {'cohort': 0, 'edge': [0, 1]})
    assert nxt.cohorts[0].matching == {(0, 1)}


def test_linear_perturbation():
    sys = SetSystem(4, [[0, 1, 2, 3], [0, 1, 2, 3]])
    cur = init_state(sys, toy_profile())
    nxt, record = execute(cur, stage=1)
    assert record.step == 8
    assert record.witnesses['rows'] == 2
    assert record.witnesses['floating'] == 4
    assert record.witnesses['t'] == '1'
    assert record.witnesses['frozen'] == [0, 1]
    assert record.witnesses['rows_preserved'] is True
    assert list(nxt.chi) == [-1, 1, 0, 0]
    assert (record.potential_before, record.potential_after, record.frozen_delta) == (0, 2, 2)

    mirrored, record = execute(cur, Opt(mirror=True), stage=1)
    assert list(mirrored.chi) == [1, -1, 0, 0]
    assert record.witnesses['direction'] == -1


def test_nothing_fires_when_settled():
    sys = SetSystem(2, [[0], [1]])
    cur = make_state(sys, [1, -1], benign=[0, 1])
    assert select_step(cur) is None
    assert execute(cur) is None


def test_benign_sets_still_perturb():
    sys = SetSystem(2, [[0], [1]])
    cur = make_state(sys, [0, 0], benign=[0, 1])
    assert select_step(cur) == (8, {'rows': 0, 'floating': 2})
    assert list(round_residual(cur, -1)) == [-1, -1]


def test_round_residual_needs_all_benign():
    sys = SetSystem(2, [[0], [1]])
    cur = make_state(sys, [0, 0], benign=[0], pool=[1])
    with pytest.raises(EngineError):
        round_residual(cur)


def _seed_state(banner_value=QQ(7, 8)):
    sys = SetSystem(7, [[0, 1, 2], [3, 4, 5, 6], [0, 3]])
    chi = [banner_value, -1, 0, QQ(7, 8), -1, 0, -1]
    return make_state(sys, chi, pool=[0, 1, 2])


def test_find_seed_prefers_smaller_rank():
    cur = _seed_state()
    seed = find_seed(cur)
    assert seed == CohortSeed(3, 1, 0, (1,))
    assert seed_violations(cur, seed) == []


def test_find_seed_prefers_lower_banner():
    sys = SetSystem(6, [[0, 1, 2], [3, 4, 5], [0, 3]])
    cur = make_state(sys, [QQ(7, 8), -1, 0, QQ(7, 8), -1, 0], pool=[0, 1, 2])
    assert find_seed(cur) == CohortSeed(0, 1, 1, (0,))


def test_find_seed_none():
    sys = SetSystem(4, [[0, 1, 2], [0, 3]])
    cur = make_state(sys, [QQ(3, 4), -1, 0, 0], pool=[0, 1])
    assert find_seed(cur) is None
    cur.chi = FloatingColoring([QQ(7, 8), -1, 0, 0])
    assert find_seed(cur) == CohortSeed(0, 1, 1, (0,))


def test_seed_violations():
    cur = _seed_state()
    problems = seed_violations(cur, CohortSeed(1, 1, 0, (2,)))
    assert any('frozen' in p for p in problems)
    assert any('misses the banner' in p for p in problems)


def test_nearly_frozen_sets():
    sys = SetSystem(5, [[0, 1, 2, 3, 4]])
    cur = make_state(sys, [QQ(3, 4), QQ(-7, 8), QQ(1, 2), 1, QQ(-3, 4)], pool=[0])
    assert nearly_frozen_sets(cur) == ({0}, {1, 4})


def test_large_set_charge():
    sys = SetSystem(10, [list(range(10)), [0], [0], [0], [0]])
    cur = make_state(sys, [QQ(7, 8)] * 10, pool=[0], benign=[1, 2, 3, 4])
    ledger = charge_ledger(cur)
    assert len(ledger) == 10
    assert all(e.case == 3 for e in ledger.entries)
    assert ledger.charge(3, 0) == QQ(1, 8)
    assert ledger.charge(3, 1) == 0
    assert ledger.set_totals() == {0: QQ(5, 4)}
    assert list(ledger.to_frame().columns) == ['element', 'set', 'case', 'value']


def test_small_set_charge_is_negative():
    sys = SetSystem(4, [[0, 1, 2], [0, 3]])
    cur = make_state(sys, [QQ(7, 8), -1, 0, 0], pool=[0], benign=[1])
    ledger = charge_ledger(cur)
    assert [(e.element, e.set, e.case) for e in ledger.entries] == [(0, 0, 1)]
    assert ledger.charge(0, 0) == -1
    assert ledger.anomalies == []

    report = charge_diagnostics(cur)
    assert report.ok
    summary = report.summary()
    assert summary['negative_elements'] == [0]
    assert summary['pool_balance'] == 0
    assert summary['verdicts']['undercount'] is True
    assert summary['verdicts']['negcharge'] is True


def test_charge_anomaly():
    sys = SetSystem(4, [[0, 1, 2], [0, 3]])
    cur = make_state(sys, [QQ(1, 2), -1, 0, 0], pool=[0], benign=[1])
    ledger = charge_ledger(cur)
    assert ledger.entries == []
    assert ledger.anomalies == [0]
