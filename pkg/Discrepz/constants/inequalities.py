from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import pandas as pd

from Discrepz.constants.profile import ConstantProfile, UNREPRESENTABLE, pow2
from Discrepz.utilities.type_checker import format_rational, is_integer

LABELS = ('a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j')


@dataclass(frozen=True)
class InequalityEntry:
    label: str
    r: int | None
    relation: str
    lhs: object
    rhs: object
    holds: bool | None

    @property
    def representable(self) -> bool:
        return self.holds is not None


def _compare(lhs, relation, rhs) -> bool:
    if relation == '<=':
        return lhs <= rhs
    elif relation == '<':
        return lhs < rhs
    elif relation == '>=':
        return lhs >= rhs
    raise ValueError(f"Unknown relation {relation}")


def _entry(label: str, r, relation: str, fn: Callable, *operands) -> InequalityEntry:
    if any(v is UNREPRESENTABLE for v in operands):
        return InequalityEntry(label, r, relation, UNREPRESENTABLE, UNREPRESENTABLE, None)
    lhs, rhs = fn(*operands)
    return InequalityEntry(label, r, relation, lhs, rhs, bool(_compare(lhs, relation, rhs)))


def _show(v) -> str:
    if v is UNREPRESENTABLE:
        return 'unrepresentable'
    if is_integer(v):
        if abs(v).bit_length() > 64:
            return f"<{abs(v).bit_length()}-bit integer>"
        return str(v)
    bits = abs(int(v.numerator)).bit_length()
    if bits > 64:
        return f"<{bits}-bit rational>"
    return format_rational(v)


class InequalityReport:
    """Verdicts for the ten constant inequalities; reporting only, never raises."""

    def __init__(self, profile: ConstantProfile, d: int, entries: list[InequalityEntry]):
        self.profile = profile
        self.d = d
        self.entries = entries

    @property
    def all_hold(self) -> bool:
        return all(e.holds is True for e in self.entries)

    def failures(self) -> list[InequalityEntry]:
        return [e for e in self.entries if e.holds is False]

    def unrepresentable(self) -> list[InequalityEntry]:
        return [e for e in self.entries if e.holds is None]

    def verdict(self, label: str, r: int | None = None) -> bool | None:
        for e in self.entries:
            if e.label == label and e.r == r:
                return e.holds
        raise KeyError(f"No entry ({label}, r={r}) in the report")

    def to_frame(self) -> pd.DataFrame:
        rows = [{'inequality': f"({e.label})",
                 'r': '' if e.r is None else e.r,
                 'lhs': _show(e.lhs),
                 'relation': e.relation,
                 'rhs': _show(e.rhs),
                 'verdict': 'unrepresentable' if e.holds is None else ('holds' if e.holds else 'FAILS')}
                for e in self.entries]
        return pd.DataFrame(rows, columns=['inequality', 'r', 'lhs', 'relation', 'rhs', 'verdict'])

    def to_dict(self) -> dict:
        return {'d': self.d,
                'profile': self.profile.to_dict(),
                'all_hold': self.all_hold,
                'entries': [{'label': e.label, 'r': e.r, 'relation': e.relation,
                             'lhs': _show(e.lhs), 'rhs': _show(e.rhs), 'holds': e.holds}
                            for e in self.entries]}


def _extended_tower(profile: ConstantProfile) -> list:
    ext = list(profile.tw)
    for idx in range(len(ext), profile.delta + 2):
        if idx < 2:
            ext.append(profile.delta)
        else:
            prev = ext[idx - 2]
            ext.append(UNREPRESENTABLE if prev is UNREPRESENTABLE else pow2(8 * prev, profile.bit_cap))
    return ext


def check_inequalities(profile: ConstantProfile, d: int) -> InequalityReport:
    """
    Evaluate inequalities (a)-(j) exactly for every applicable ``r < delta``.

    (d) needs ``Tw_{r-2}`` and is evaluated for ``r >= 2`` only. (j) needs ``Tw_{r+2}``:
    profiles derived from d extend the tower recurrence, manual profiles are only checked
    where ``r + 2 < delta``. (e) is evaluated in the equivalent integer form
    ``2^{Tw_{delta-1}} <= floor(log2 d)``.
    """
    if not is_integer(d) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    delta, alpha, w, cap = profile.delta, profile.alpha, profile.w, profile.bit_cap
    tw, beta = profile.tw, profile.beta
    top = tw[delta - 1]
    ext = _extended_tower(profile) if profile.source == 'paper-derived-from-d' else list(tw)
    per_r = {label: [] for label in LABELS}

    for r in range(delta):
        t, b = tw[r], beta[r]
        per_r['a'].append(_entry('a', r, '<=', lambda t: (delta, t), t))
        per_r['b'].append(_entry('b', r, '<', lambda t, b: (t + delta, b * (1 - alpha)), t, b))
        per_r['c'].append(_entry('c', r, '<=',
                                 lambda t, b: ((b + 1) * alpha + t + delta, 4 * t), t, b))
        if r >= 2:
            prev = tw[r - 2]
            p16 = UNREPRESENTABLE if prev is UNREPRESENTABLE else pow2(16 * prev, cap)
            per_r['d'].append(_entry('d', r, '<=', lambda t, p: (16 * t, p), t, p16))
        p8 = UNREPRESENTABLE if t is UNREPRESENTABLE else pow2(8 * t + 6, cap)
        per_r['h'].append(_entry('h', r, '<', lambda t, p: (p * t, w), t, p8))
        p4 = UNREPRESENTABLE if t is UNREPRESENTABLE else pow2(4 * t, cap)

        def spill(t, b, p):
            return 2 * p * b * alpha + 2 * p * t + p * delta

        per_r['i'].append(_entry('i', r, '>=',
                                 lambda t, b, p: ((1 - alpha / 2) * (2 * d - delta),
                                                  (1 - alpha / 2) * d + spill(t, b, p)), t, b, p4))
        if r + 2 < len(ext):
            per_r['j'].append(_entry('j', r, '>=',
                                     lambda t2, t, b, p: (t2, spill(t, b, p)), ext[r + 2], t, b, p4))

    ptop = UNREPRESENTABLE if top is UNREPRESENTABLE else pow2(top, cap)
    per_r['e'].append(_entry('e', None, '<=', lambda p: (p, d.bit_length() - 1), ptop))
    per_r['f'].append(_entry('f', None, '<=',
                             lambda t: (2 * t + (2 - alpha) * delta, alpha * d), top))
    per_r['g'].append(_entry('g', None, '>=',
                             lambda t: (d, w * delta * (delta + 2 * t + 2) * (8 + 4 * delta)), top))

    entries = [e for label in LABELS for e in per_r[label]]
    return InequalityReport(profile, d, entries)
