from __future__ import annotations

from typing import Iterable


class Cohort:
    """
    A group of nasty sets sharing the banner element. ``matching`` holds edges as sorted
    pairs of set indices.
    """
    __slots__ = ['members', 'banner', 'sign', 'rank', 'matching']

    def __init__(self,
                 members: Iterable[int],
                 banner: int,
                 sign: int,
                 rank: int,
                 matching: Iterable[tuple[int, int]] = ()):
        if sign not in (1, -1):
            raise ValueError(f"Cohort sign must be +1 or -1, got {sign!r}")
        self.members = set(members)
        self.banner = banner
        self.sign = sign
        self.rank = rank
        self.matching = {tuple(sorted(e)) for e in matching}

    def matched_sets(self) -> set[int]:
        return {s for e in self.matching for s in e}

    def unmatched(self) -> list[int]:
        matched = self.matched_sets()
        return sorted(s for s in self.members if s not in matched)

    def partner(self, s: int) -> int | None:
        for a, b in self.matching:
            if a == s:
                return b
            if b == s:
                return a
        return None

    def add_edge(self, a: int, b: int):
        self.matching.add((min(a, b), max(a, b)))

    def remove_edge(self, a: int, b: int):
        self.matching.discard((min(a, b), max(a, b)))

    def copy(self) -> Cohort:
        return Cohort(self.members, self.banner, self.sign, self.rank, self.matching)

    def to_dict(self) -> dict:
        return {'members': sorted(self.members),
                'banner': self.banner,
                'sign': self.sign,
                'rank': self.rank,
                'matching': [list(e) for e in sorted(self.matching)]}

    def __eq__(self, other):
        if not isinstance(other, Cohort):
            return NotImplemented
        return (self.members == other.members and self.banner == other.banner and self.sign == other.sign
                and self.rank == other.rank and self.matching == other.matching)

    def __repr__(self):
        return (f"Cohort(banner={self.banner}, sign={self.sign:+d}, rank={self.rank}, "
                f"|C|={len(self.members)}, |M|={len(self.matching)})")
