from Discrepz.constants import check_inequalities, manual_profile, paper_profile, UNREPRESENTABLE


def test_toy_profile_verdicts():
    p = manual_profile(2, 1, tw=[2, 2], beta=[8, 8])
    report = check_inequalities(p, 100)
    assert report.verdict('a', 0) is True
    assert report.verdict('a', 1) is True
    assert report.verdict('b', 0) is True
    entry_b = [e for e in report.entries if e.label == 'b' and e.r == 0][0]
    assert entry_b.lhs == 4
    assert entry_b.rhs == 6
    # no Tw_{r+2} in a manual table of length 2
    assert not [e for e in report.entries if e.label == 'j']
    assert not [e for e in report.entries if e.label == 'd']


def test_small_tower_fails_a():
    p = manual_profile(3, 1, tw=[2, 3, 3])
    report = check_inequalities(p, 100)
    assert report.verdict('a', 0) is False
    assert not report.all_hold


def test_paper_profile_at_toy_d():
    p = paper_profile(4, allow_infeasible=True)
    report = check_inequalities(p, 4)
    # 2^Tw_1 = 4 > floor(log2 4) = 2
    assert report.verdict('e') is False
    assert report.failures()


def test_unrepresentable_marked():
    p = paper_profile(65536, allow_infeasible=True)
    report = check_inequalities(p, 65536)
    h2 = [e for e in report.entries if e.label == 'h' and e.r == 2][0]
    assert h2.holds is None
    assert h2.lhs is UNREPRESENTABLE
    assert report.unrepresentable()
    assert report.verdict('a', 3) is True
    frame = report.to_frame()
    assert list(frame.columns) == ['inequality', 'r', 'lhs', 'relation', 'rhs', 'verdict']
    assert 'unrepresentable' in set(frame['verdict'])
    assert report.to_dict()['all_hold'] is False
