from __future__ import annotations

from dataclasses import dataclass

from Discrepz.solvers.cohortsolver.utilities import *

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CohortSeed:
    banner: int
    sign: int
    rank: int
    members: tuple

    def to_dict(self) -> dict:
        return {'banner': self.banner, 'sign': self.sign, 'rank': self.rank, 'members': list(self.members)}


def nearly_frozen_sets(cur: AlgorithmState) -> tuple[set[int], set[int]]:
    """
    ``B+ = {x floating: chi(x) >= 1 - alpha}`` and ``B- = {x floating: -chi(x) >= 1 - alpha}``.

    These use the non-strict comparison; seeds and rounding use
    :func:`exceeds_round_threshold` instead.
    """
    cut = 1 - cur.profile.alpha
    b_plus, b_minus = set(), set()
    for x in cur.chi.floating():
        v = cur.chi[x]
        if v >= cut:
            b_plus.add(x)
        elif -v >= cut:
            b_minus.add(x)
    return b_plus, b_minus


def _opposite_threat(st: SetStats, sign: int) -> int:
    return st.th_neg if sign == 1 else st.th_pos


def find_seed(cur: AlgorithmState, stats: list[SetStats] = None) -> CohortSeed | None:
    """
    Search for a banner ``b`` and ``W`` pool sets from which a new cohort can be created.

    For ``chi(b) > 1 - alpha`` the sets must contain ``b``, have ``Sz <= d`` and
    ``Th-(S) = 2d - r`` with ``0 <= r < delta``; the case ``-chi(b) > 1 - alpha`` uses
    ``Th+``. Among all full buckets the smallest ``(r, b)`` wins and its ``W``
    lowest-indexed sets become the members.
    """
    if stats is None:
        stats = cur.stats()
    profile = cur.profile
    d, delta, w = cur.d, profile.delta, profile.w
    best = None
    for b in cur.chi.floating():
        if not exceeds_round_threshold(cur.chi[b], profile.alpha):
            continue
        sign = sign_of(cur.chi[b])
        buckets = {}
        for s in cur.sys.memberships[b]:
            if s not in cur.pool:
                continue
            st = stats[s]
            r = 2 * d - _opposite_threat(st, sign)
            if st.sz <= d and 0 <= r < delta:
                buckets.setdefault(r, []).append(s)
        for r, sets in buckets.items():
            if len(sets) >= w and (best is None or (r, b) < (best[0], best[1])):
                best = (r, b, sign, tuple(sorted(sets)[:w]))
    if best is None:
        logger.debug("no cohort seed among %d pool sets", len(cur.pool))
        return None
    r, b, sign, members = best
    return CohortSeed(b, sign, r, members)


def seed_violations(cur: AlgorithmState, seed: CohortSeed, stats: list[SetStats] = None) -> list[str]:
    """Reasons ``seed`` cannot create a cohort on ``cur``; empty when it can."""
    if stats is None:
        stats = cur.stats()
    profile = cur.profile
    d = cur.d
    problems = []
    v = cur.chi[seed.banner]
    if cur.chi.frozen(seed.banner):
        problems.append(f"banner {seed.banner} is frozen")
    if sign_of(v) != seed.sign or not exceeds_round_threshold(v, profile.alpha):
        problems.append(f"banner color {format_rational(v)} does not pass 1-alpha with sign {seed.sign:+d}")
    if not 0 <= seed.rank < profile.delta:
        problems.append(f"rank {seed.rank} outside 0..{profile.delta - 1}")
    if len(set(seed.members)) != profile.w:
        problems.append(f"{len(set(seed.members))} members, W={profile.w}")
    for s in seed.members:
        if s not in cur.pool:
            problems.append(f"set {s} is not in the pool")
            continue
        st = stats[s]
        if seed.banner not in cur.sys.sets[s]:
            problems.append(f"set {s} misses the banner")
        if st.sz > d:
            problems.append(f"set {s} has Sz={st.sz} > d")
        if _opposite_threat(st, seed.sign) != 2 * d - seed.rank:
            problems.append(f"set {s} has threat {_opposite_threat(st, seed.sign)} != 2d-r")
    return problems
