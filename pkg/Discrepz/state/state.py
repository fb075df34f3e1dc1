from __future__ import annotations

from Discrepz.constants.profile import ConstantProfile
from Discrepz.setsystem import SetSystem, FloatingColoring, all_set_stats
from Discrepz.state.cohort import Cohort
from Discrepz.utilities.errors import InfeasibleProfileError
from Discrepz.utilities.type_checker import format_rational


class AlgorithmState:
    """
    Data of the cohort algorithm: the coloring and the partition of the family into the
    benign sets ``B``, the pool ``G`` and the cohorts. Defeat counts are kept for cohort
    members only.

    The engine never mutates a state it has handed out; it copies and mutates the copy.
    """
    __slots__ = ['sys', 'profile', 'chi', 'benign', 'pool', 'cohorts', 'defeats']

    def __init__(self,
                 sys: SetSystem,
                 profile: ConstantProfile,
                 chi: FloatingColoring,
                 benign: set[int],
                 pool: set[int],
                 cohorts: list[Cohort],
                 defeats: dict[int, int]):
        self.sys = sys
        self.profile = profile
        self.chi = chi
        self.benign = benign
        self.pool = pool
        self.cohorts = cohorts
        self.defeats = defeats

    @property
    def d(self) -> int:
        return self.sys.d

    @property
    def benign_bound(self) -> int:
        return 2 * self.sys.d - self.profile.delta

    def stats(self):
        return all_set_stats(self.sys, self.chi)

    def cohort_of(self, s: int) -> int | None:
        for i, c in enumerate(self.cohorts):
            if s in c.members:
                return i
        return None

    def cohort_sets(self) -> set[int]:
        return {s for c in self.cohorts for s in c.members}

    def settled(self) -> bool:
        return len(self.benign) == self.sys.m

    def partition_ok(self) -> bool:
        seen = []
        seen.extend(self.benign)
        seen.extend(self.pool)
        for c in self.cohorts:
            seen.extend(c.members)
        if sorted(seen) != list(range(self.sys.m)):
            return False
        return set(self.defeats) == self.cohort_sets()

    def copy(self) -> AlgorithmState:
        return AlgorithmState(self.sys, self.profile, self.chi, set(self.benign), set(self.pool),
                              [c.copy() for c in self.cohorts], dict(self.defeats))

    def snapshot(self) -> dict:
        return {'chi': [format_rational(v) for v in self.chi],
                'benign': sorted(self.benign),
                'pool': sorted(self.pool),
                'cohorts': [c.to_dict() for c in self.cohorts],
                'defeats': {str(s): D for s, D in sorted(self.defeats.items())},
                'profile': self.profile.to_dict()}

    def __repr__(self):
        return (f"AlgorithmState(|B|={len(self.benign)}, |G|={len(self.pool)}, m={len(self.cohorts)}, "
                f"frozen={self.chi.frozen_count})")


def init_state(sys: SetSystem, profile: ConstantProfile) -> AlgorithmState:
    """``chi = 0``, ``B`` empty, ``G`` the whole family and no cohorts."""
    if not profile.feasible:
        raise InfeasibleProfileError(f"Profile {profile!r} cannot drive a run (W={profile.w})")
    return AlgorithmState(sys, profile, FloatingColoring.zeros(sys.n), set(), set(range(sys.m)), [], {})


def potential(cur: AlgorithmState) -> int:
    """``I = F + 4|B| - m + sum_i (|M_i| + |C_i|)`` with F the number of frozen elements."""
    return (cur.chi.frozen_count + 4 * len(cur.benign) - len(cur.cohorts)
            + sum(len(c.matching) + len(c.members) for c in cur.cohorts))
