from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_array

from Discrepz.utilities.errors import InstanceError
from Discrepz.utilities.type_checker import is_integer


class SetSystem:
    """
    A ground set ``{0, ..., n-1}`` together with an ordered family of subsets.

    Sets are stored canonically as strictly increasing tuples. The same subset may occur
    several times in the family; occurrences are distinct members by position.
    """
    __slots__ = ['n', 'sets', 'd', 'memberships']

    def __init__(self,
                 n: int,
                 sets: Iterable[Iterable[int]]):
        if not is_integer(n) or n < 0:
            raise InstanceError(f"Ground-set size must be a nonnegative integer, got {n!r}")
        canon = []
        for j, s in enumerate(sets):
            members = []
            for x in s:
                if not is_integer(x):
                    raise InstanceError(f"Set {j} holds non-integer element {x!r}")
                if x < 0 or x >= n:
                    raise InstanceError(f"Set {j} holds element {x} outside 0..{n - 1}")
                members.append(int(x))
            members.sort()
            for a, b in zip(members, members[1:]):
                if a == b:
                    raise InstanceError(f"Set {j} holds duplicate element {a}")
            canon.append(tuple(members))
        if len(canon) == 0:
            raise InstanceError("The set family is empty")

        member_lists = [[] for _ in range(n)]
        for j, s in enumerate(canon):
            for x in s:
                member_lists[x].append(j)

        self.n = int(n)
        self.sets = tuple(canon)
        self.memberships = tuple(tuple(m) for m in member_lists)
        self.d = max((len(m) for m in member_lists), default=0)

    @property
    def m(self) -> int:
        return len(self.sets)

    def degree(self, x: int) -> int:
        return len(self.memberships[x])

    def incidence(self) -> csr_array:
        """The m-by-n 0/1 incidence matrix."""
        rows = [j for j, s in enumerate(self.sets) for _ in s]
        cols = [x for s in self.sets for x in s]
        data = np.ones(len(cols), dtype=np.int8)
        return csr_array((data, (rows, cols)), shape=(self.m, self.n), dtype=np.int8)

    def to_dict(self) -> dict:
        return {'n': self.n, 'sets': [list(s) for s in self.sets]}

    @classmethod
    def from_dict(cls, doc: dict) -> SetSystem:
        if not isinstance(doc, dict):
            raise InstanceError(f"Instance document must be a JSON object, got {type(doc).__name__}")
        missing = {'n', 'sets'} - set(doc)
        if missing:
            raise InstanceError(f"Instance document misses key(s) {sorted(missing)}")
        sets = doc['sets']
        if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
            raise InstanceError("'sets' must be a list of lists of element indices")
        return cls(doc['n'], sets)

    def __eq__(self, other):
        if not isinstance(other, SetSystem):
            return NotImplemented
        return self.n == other.n and self.sets == other.sets

    def __hash__(self):
        return hash((self.n, self.sets))

    def __repr__(self):
        plural = 'set' if self.m == 1 else 'sets'
        return f"SetSystem(n={self.n}, {self.m} {plural}, d={self.d})"


def parse_set_system(text: str | bytes | dict) -> SetSystem:
    """
    Parse an instance document ``{"n": <int>, "sets": [[<int>...], ...]}``.

    Parameters
    ==========

    text : str | bytes | dict
        The JSON text, or an already decoded document.

    Returns
    =======

    sys : SetSystem
        The canonical set system with its maximum degree computed.

    """
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise InstanceError(f"Malformed instance JSON: {e.msg} at line {e.lineno}")
    else:
        doc = text
    return SetSystem.from_dict(doc)


def verify_coloring(sys: SetSystem, colors: Sequence[int]) -> tuple[list[int], int]:
    """Per-set sums of a full +1/-1 coloring and their largest magnitude."""
    if len(colors) != sys.n:
        raise InstanceError(f"Coloring has {len(colors)} entries, instance has n={sys.n}")
    for x, c in enumerate(colors):
        if not is_integer(c) or c not in (1, -1):
            raise InstanceError(f"Coloring entry {x} is {c!r}, expected +1 or -1 (non-frozen)")
    sums = sys.incidence() @ np.asarray(colors, dtype=np.int64)
    per_set = [int(v) for v in sums]
    return per_set, max(abs(v) for v in per_set)
