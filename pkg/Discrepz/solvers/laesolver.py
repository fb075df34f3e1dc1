from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from Discrepz.setsystem import FloatingColoring
from Discrepz.utilities.errors import EngineError
from Discrepz.utilities.type_checker import as_rational, format_rational

logger = logging.getLogger(__name__)


class LinearSystem:
    """
    Rows ``sum_x coeff[x] * tau(x) = rhs`` over the floating unknowns. Frozen coordinates
    are already folded into ``rhs``.
    """
    __slots__ = ['rows', 'unknowns', 'labels']

    def __init__(self,
                 rows: list[tuple[dict, object]],
                 unknowns: list[int],
                 labels: list[str] = None):
        self.rows = rows
        self.unknowns = list(unknowns)
        self.labels = list(labels) if labels is not None else [f"row:{i}" for i in range(len(rows))]
        if len(self.labels) != len(self.rows):
            raise ValueError(f"{len(self.labels)} labels for {len(self.rows)} rows")
        known = set(self.unknowns)
        for label, (coeffs, _) in zip(self.labels, self.rows):
            stray = set(coeffs) - known
            if stray:
                raise ValueError(f"Row {label} has coefficients on non-unknowns {sorted(stray)}")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.unknowns)

    def to_domain_matrix(self) -> DomainMatrix:
        col = {x: j for j, x in enumerate(self.unknowns)}
        dod = {}
        for i, (coeffs, _) in enumerate(self.rows):
            row = {col[x]: as_rational(c) for x, c in coeffs.items() if c != 0}
            if row:
                dod[i] = row
        return DomainMatrix.from_dod(dod, self.shape, QQ)

    def residuals(self, chi: FloatingColoring) -> list:
        """``lhs - rhs`` per row at ``chi``; all zero when ``chi`` solves the system."""
        return [sum((c * chi[x] for x, c in coeffs.items()), QQ(0)) - rhs for coeffs, rhs in self.rows]

    def dump(self) -> str:
        """Coordinate text in the matrix-market layout, rows and columns 1-based."""
        col = {x: j for j, x in enumerate(self.unknowns)}
        entries = [(i + 1, col[x] + 1, c) for i, (coeffs, _) in enumerate(self.rows)
                   for x, c in sorted(coeffs.items()) if c != 0]
        lines = ['%%MatrixMarket matrix coordinate rational general',
                 f"% unknowns: {' '.join(str(x) for x in self.unknowns)}"]
        lines.extend(f"% row {i + 1}: {label} = {format_rational(rhs)}"
                     for i, (label, (_, rhs)) in enumerate(zip(self.labels, self.rows)))
        lines.append(f"{self.shape[0]} {self.shape[1]} {len(entries)}")
        lines.extend(f"{i} {j} {format_rational(c)}" for i, j, c in entries)
        return '\n'.join(lines) + '\n'

    def __repr__(self):
        return f"LinearSystem(rows={self.shape[0]}, unknowns={self.shape[1]})"


def kernel_direction(lin: LinearSystem) -> dict | None:
    r"""
    A nonzero rational ``v`` with ``lin v = 0``, or ``None`` when the kernel is trivial.

    The matrix is row reduced exactly over ``QQ``. The lowest free unknown is set to 1, the
    other free unknowns to 0, and every pivot unknown is read off its reduced row. With no
    rows the direction is the unit vector on the lowest unknown.
    """
    if not lin.unknowns:
        return None
    if not lin.rows:
        return {lin.unknowns[0]: QQ(1)}
    rref, pivots = lin.to_domain_matrix().rref()
    if len(pivots) == len(lin.unknowns):
        return None
    pivot_set = set(pivots)
    free = min(j for j in range(len(lin.unknowns)) if j not in pivot_set)
    reduced = rref.to_dod()
    v = {lin.unknowns[free]: QQ(1)}
    for row in reduced.values():
        # each reduced row is led by its pivot with coefficient 1
        entry = row.get(free)
        if entry:
            v[lin.unknowns[min(row)]] = -entry
    logger.debug("kernel direction on %d unknowns, rank %d, free unknown %d", len(lin.unknowns),
                 len(pivots), lin.unknowns[free])
    return v


@dataclass(frozen=True)
class BoundaryWalk:
    coloring: FloatingColoring
    direction: int
    t: object

    def newly_frozen(self, before: FloatingColoring) -> list[int]:
        return [x for x in range(len(before)) if not before.frozen(x) and self.coloring.frozen(x)]


def _step_length(chi: FloatingColoring, v: Mapping[int, object], sign: int):
    t = None
    for x, vx in v.items():
        vx = sign * vx
        if vx == 0:
            continue
        room = (1 - chi[x]) / vx if vx > 0 else (-1 - chi[x]) / vx
        if t is None or room < t:
            t = room
    return t


def walk_to_boundary(chi: FloatingColoring,
                     v: Mapping[int, object],
                     prefer: int = 1) -> BoundaryWalk:
    """
    Move ``chi`` along ``v`` (``prefer`` first, then the opposite sign) by the largest step
    that keeps every coordinate in ``[-1, 1]``. At least one floating coordinate ends at
    exactly +1 or -1.
    """
    if prefer not in (1, -1):
        raise ValueError(f"prefer must be +1 or -1, got {prefer!r}")
    v = {x: as_rational(c) for x, c in v.items() if c != 0}
    if not v:
        raise ValueError("Direction is zero")
    touched = [x for x in v if chi.frozen(x)]
    if touched:
        raise ValueError(f"Direction moves frozen element(s) {sorted(touched)}")
    for sign in (prefer, -prefer):
        t = _step_length(chi, v, sign)
        if t is not None and t > 0:
            moved = chi.updated({x: chi[x] + sign * t * vx for x, vx in v.items()})
            return BoundaryWalk(moved, sign, t)
    raise EngineError("No positive step along the direction in either sign")


class KernelTracker:
    r"""
    Reduced rows of a homogeneous system kept up to date while unknowns freeze.

    Each row is stored under its pivot unknown, whose coefficient is 1 and which appears in
    no other row. Freezing an unknown deletes its column; when it was a pivot, its row is
    first re-pivoted on its lowest remaining unknown. Row operations and column deletion
    commute, so the rows stay equivalent to the original rows restricted to the remaining
    unknowns without reducing from scratch.
    """

    def __init__(self, lin: LinearSystem, keys=()):
        self.keys = frozenset(keys)
        self.rows = {}
        self.holders = {}
        self.free = set(lin.unknowns)
        if lin.rows and lin.unknowns:
            rref, _ = lin.to_domain_matrix().rref()
            for row in rref.to_dod().values():
                pivot = lin.unknowns[min(row)]
                self._store(pivot, {lin.unknowns[j]: c for j, c in row.items()})
        logger.debug("kernel tracker on %d unknowns, rank %d", len(lin.unknowns), len(self.rows))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _store(self, pivot, row):
        self.rows[pivot] = row
        self.free.discard(pivot)
        for x in row:
            if x != pivot:
                self.holders.setdefault(x, set()).add(pivot)

    def direction(self) -> dict | None:
        """The lowest free unknown set to 1, the other free unknowns 0; ``None`` when none is free."""
        if not self.free:
            return None
        free = min(self.free)
        v = {free: QQ(1)}
        for pivot in self.holders.get(free, ()):
            v[pivot] = -self.rows[pivot][free]
        return v

    def freeze(self, x):
        if x in self.free:
            self.free.discard(x)
            for pivot in self.holders.pop(x, ()):
                del self.rows[pivot][x]
            return
        row = self.rows.pop(x)
        del row[x]
        for y in row:
            self.holders[y].discard(x)
        if not row:
            return
        pivot = min(row)
        scale = row[pivot]
        row = {y: c / scale for y, c in row.items()}
        for other_pivot in self.holders.pop(pivot, set()):
            other = self.rows[other_pivot]
            k = other.pop(pivot)
            for y, c in row.items():
                if y == pivot:
                    continue
                value = other.get(y, QQ(0)) - k * c
                if value:
                    other[y] = value
                    self.holders.setdefault(y, set()).add(other_pivot)
                else:
                    other.pop(y, None)
                    self.holders[y].discard(other_pivot)
        self._store(pivot, row)
