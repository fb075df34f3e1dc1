import pytest
from sympy.polys.domains import QQ

from Discrepz.constants import (log_star, r_term, paper_profile, manual_profile, profile_from_dict,
                                UNREPRESENTABLE)
from Discrepz.utilities.errors import InfeasibleProfileError, TowerOverflowError, ProfileError


def test_log_star():
    assert log_star(1) == 0
    assert log_star(2) == 1
    assert log_star(3) == 2
    assert log_star(16) == 3
    assert log_star(17) == 4
    assert log_star(65536) == 4
    assert log_star(65537) == 5
    with pytest.raises(ValueError):
        log_star(0)


def test_log_star_properties():
    prev = 0
    for x in range(1, 300):
        cur = log_star(x)
        assert cur >= prev
        prev = cur
    for x in list(range(1, 200)) + [65536]:
        assert log_star(2 ** x) == log_star(x) + 1


def test_r_term():
    for delta in range(1, 20):
        assert r_term(0, delta) == 0
    assert r_term(1, 11) == -11
    for delta in range(2, 17):
        for D in range(0, 31):
            assert 2 * r_term(D, delta) - r_term(D + 1, delta) == delta + 2 - 2 ** (D + 1)
    with pytest.raises(ValueError):
        r_term(-1, 3)


def test_paper_profile():
    with pytest.raises(InfeasibleProfileError, match="W = floor"):
        paper_profile(65536)
    p = paper_profile(65536, allow_infeasible=True)
    assert p.delta == 4
    assert p.tw == (4, 4, 2 ** 32, 2 ** 32)
    assert p.beta == tuple(4 * t for t in p.tw)
    assert p.w == 0
    assert p.alpha == QQ(1, 4)
    assert not p.feasible

    with pytest.raises(InfeasibleProfileError):
        paper_profile(4)
    p4 = paper_profile(4, allow_infeasible=True)
    assert p4.delta == 2
    assert p4.tw == (2, 2)
    assert p4.beta == (8, 8)

    with pytest.raises(TowerOverflowError, match="Tw_4"):
        paper_profile(65537)
    p5 = paper_profile(65537, allow_infeasible=True)
    assert p5.tw[4] is UNREPRESENTABLE

    with pytest.raises(ValueError):
        paper_profile(1)


def test_manual_profile():
    p = manual_profile(2, 1, tw=[2, 2], beta=[8, 8])
    assert p.source == 'manual-override'
    assert p.alpha == QQ(1, 4)
    toy = manual_profile(3, 1)
    assert toy.tw == (3, 3, 2 ** 24)
    assert toy.beta == (12, 12, 2 ** 26)

    with pytest.raises(ProfileError, match="alpha"):
        manual_profile(2, 1, alpha='5/4')
    with pytest.raises(ProfileError, match="entries"):
        manual_profile(2, 1, tw=[2])
    with pytest.raises(ProfileError, match="positive"):
        manual_profile(2, 1, tw=[2, 0])
    with pytest.raises(ProfileError, match="w must"):
        manual_profile(2, 0)


def test_profile_from_dict():
    p = profile_from_dict({"delta": 2, "alpha": "1/4", "tw": [2, 2], "beta": [8, 8], "w": 1})
    assert p == manual_profile(2, 1)
    with pytest.raises(ProfileError, match="misses"):
        profile_from_dict({"delta": 2})
    with pytest.raises(ProfileError):
        profile_from_dict({"delta": 2, "alpha": "x", "tw": [2, 2], "beta": [8, 8], "w": 1})
