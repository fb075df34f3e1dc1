import pytest
from sympy.polys.domains import QQ

from Discrepz.constants import manual_profile
from Discrepz.setsystem import SetSystem, FloatingColoring
from Discrepz.state import (AlgorithmState, Cohort, init_state, potential, check_invariants, lemma_checks,
                            INVARIANT_LABELS)
from Discrepz.utilities.errors import InfeasibleProfileError


def toy_profile():
    return manual_profile(2, w=1, tw=[2, 2], beta=[8, 8])


def test_init_state():
    sys = SetSystem(4, [[0, 1], [1, 2, 3], [0, 3]])
    cur = init_state(sys, toy_profile())
    assert all(v == 0 for v in cur.chi)
    assert cur.pool == {0, 1, 2}
    assert cur.benign == set()
    assert cur.cohorts == []
    assert cur.partition_ok()
    assert potential(cur) == 0

    report = check_invariants(None, cur)
    assert report.ok
    assert report.first_violation() is None
    assert list(report.to_frame()['label']) == list(INVARIANT_LABELS)
    assert lemma_checks(cur).ok


def test_copy_is_independent():
    sys = SetSystem(3, [[0, 1], [1, 2]])
    cur = init_state(sys, toy_profile())
    nxt = cur.copy()
    nxt.pool.discard(0)
    nxt.benign.add(0)
    assert cur.pool == {0, 1}
    assert nxt.partition_ok()
    assert cur.snapshot()['chi'] == ['0', '0', '0']


def test_partition_ok_detects_overlap():
    sys = SetSystem(3, [[0, 1], [1, 2]])
    cur = init_state(sys, toy_profile())
    cur.benign.add(0)
    assert not cur.partition_ok()
    cur.pool.discard(0)
    assert cur.partition_ok()
    cur.defeats[1] = 0
    assert not cur.partition_ok()


def test_potential_formula():
    sys = SetSystem(6, [[0, 1, 2, 3, 4, 5]] * 6)
    chi = FloatingColoring([1, -1, 1, 0, 0, 0])
    cohort = Cohort({2, 3, 4, 5}, banner=3, sign=1, rank=0, matching=[(2, 3)])
    cur = AlgorithmState(sys, toy_profile(), chi, {0, 1}, set(), [cohort], {2: 0, 3: 0, 4: 0, 5: 0})
    assert cur.partition_ok()
    # 3 frozen + 4*2 benign - 1 cohort + (1 edge + 4 members)
    assert potential(cur) == 15


def test_infeasible_profile_refused():
    from Discrepz.constants import paper_profile
    sys = SetSystem(2, [[0, 1]])
    profile = paper_profile(65536, allow_infeasible=True)
    with pytest.raises(InfeasibleProfileError):
        init_state(sys, profile)


def test_cohort_structure():
    c = Cohort([4, 1, 7], banner=0, sign=-1, rank=1)
    c.add_edge(7, 1)
    assert c.matching == {(1, 7)}
    assert c.unmatched() == [4]
    assert c.partner(7) == 1
    assert c.partner(4) is None
    c.remove_edge(1, 7)
    assert c.unmatched() == [1, 4, 7]
    with pytest.raises(ValueError):
        Cohort([1], banner=0, sign=0, rank=0)
