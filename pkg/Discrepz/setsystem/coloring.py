from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from sympy.polys.domains import QQ

from Discrepz.setsystem.setsystem import SetSystem
from Discrepz.utilities.type_checker import as_rational

ONE = QQ(1)
ZERO = QQ(0)


class FloatingColoring:
    """
    Exact rational colors ``chi: X -> [-1, +1]``. An element is frozen when its value is
    exactly +1 or -1 and floating otherwise. Instances are never mutated; ``updated``
    returns a new coloring.
    """
    __slots__ = ['values']

    def __init__(self, values: Iterable, _checked: bool = False):
        if _checked:
            self.values = tuple(values)
            return
        vals = tuple(as_rational(v) for v in values)
        for x, v in enumerate(vals):
            if v > 1 or v < -1:
                raise ValueError(f"Color of element {x} is {v}, outside [-1, 1]")
        self.values = vals

    @classmethod
    def zeros(cls, n: int) -> FloatingColoring:
        return cls((ZERO,) * n, _checked=True)

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> FloatingColoring:
        vals = []
        for x, s in enumerate(signs):
            if s not in (1, -1):
                raise ValueError(f"Sign of element {x} is {s!r}, expected +1 or -1")
            vals.append(QQ(s))
        return cls(vals, _checked=True)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, x):
        return self.values[x]

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if not isinstance(other, FloatingColoring):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def frozen(self, x: int) -> bool:
        v = self.values[x]
        return v == 1 or v == -1

    def floating(self) -> list[int]:
        return [x for x, v in enumerate(self.values) if v != 1 and v != -1]

    @property
    def frozen_count(self) -> int:
        return sum(1 for v in self.values if v == 1 or v == -1)

    def updated(self, mapping: Mapping[int, object]) -> FloatingColoring:
        vals = list(self.values)
        for x, v in mapping.items():
            v = as_rational(v)
            if v > 1 or v < -1:
                raise ValueError(f"Color of element {x} is {v}, outside [-1, 1]")
            vals[x] = v
        return FloatingColoring(vals, _checked=True)

    def negate(self) -> FloatingColoring:
        return FloatingColoring([-v for v in self.values], _checked=True)

    def signs(self) -> list[int]:
        out = []
        for x, v in enumerate(self.values):
            if v == 1:
                out.append(1)
            elif v == -1:
                out.append(-1)
            else:
                raise ValueError(f"Element {x} is still floating ({v})")
        return out

    def __repr__(self):
        return f"FloatingColoring(n={len(self.values)}, frozen={self.frozen_count})"


@dataclass(frozen=True)
class SetStats:
    """
    Per-set statistics. ``fr`` and both threats are integers because frozen values are
    exactly +1 or -1; ``th_neg`` may be negative.
    """
    sz: int
    chi: object
    fr: int
    fl: object
    th_neg: int
    th_pos: int
    th: int


def set_stats(sys: SetSystem, chi: FloatingColoring, s: int) -> SetStats:
    if not 0 <= s < sys.m:
        raise IndexError(f"Set index {s} out of range 0..{sys.m - 1}")
    values = chi.values
    sz = 0
    fr = 0
    fl = ZERO
    for x in sys.sets[s]:
        v = values[x]
        if v == 1:
            fr += 1
        elif v == -1:
            fr -= 1
        else:
            sz += 1
            fl += v
    th_neg = sz - fr
    th_pos = sz + fr
    return SetStats(sz, fl + fr, fr, fl, th_neg, th_pos, max(th_neg, th_pos))


def all_set_stats(sys: SetSystem, chi: FloatingColoring) -> list[SetStats]:
    return [set_stats(sys, chi, s) for s in range(sys.m)]


def discrepancy_of(sys: SetSystem, chi: FloatingColoring):
    """``max_S |chi(S)|`` as an exact rational."""
    return max(abs(st.chi) for st in all_set_stats(sys, chi))
