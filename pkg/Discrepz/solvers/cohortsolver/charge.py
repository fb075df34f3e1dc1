from __future__ import annotations

from dataclasses import dataclass

import pandas as pd

from Discrepz.solvers.cohortsolver.utilities import *
from Discrepz.solvers.cohortsolver.seed import nearly_frozen_sets
from Discrepz.state.invariants import InvariantReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChargeEntry:
    element: int
    set: int
    case: int
    value: object


class ChargeLedger:
    """
    Nonzero charges ``Ch(x, S)`` for nearly frozen ``x`` and pool sets ``S``.

    Cases: 1 and 2 are small sets threatened from the opposite side and carry
    ``(Sz - d - 1) / |S n B+-|``; 3 and 4 are large sets and carry
    ``(Sz - d) / (4 |S n B+-|)``. Everything else is zero and not stored.
    """

    def __init__(self, entries: list[ChargeEntry], b_plus: set[int], b_minus: set[int], anomalies: list[int]):
        self.entries = entries
        self.b_plus = b_plus
        self.b_minus = b_minus
        self.anomalies = anomalies

    def charge(self, x: int, s: int):
        return sum((e.value for e in self.entries if e.element == x and e.set == s), QQ(0))

    def element_totals(self) -> dict:
        totals = {x: QQ(0) for x in sorted(self.b_plus | self.b_minus)}
        for e in self.entries:
            totals[e.element] += e.value
        return totals

    def set_totals(self) -> dict:
        totals = {}
        for e in self.entries:
            totals[e.set] = totals.get(e.set, QQ(0)) + e.value
        return totals

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{'element': e.element, 'set': e.set, 'case': e.case, 'value': format_rational(e.value)}
                             for e in self.entries], columns=['element', 'set', 'case', 'value'])

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"ChargeLedger({len(self.entries)} charges, |B+|={len(self.b_plus)}, |B-|={len(self.b_minus)})"


def charge_ledger(cur: AlgorithmState, stats: list[SetStats] = None) -> ChargeLedger:
    if stats is None:
        stats = cur.stats()
    d = cur.d
    bound = cur.benign_bound
    b_plus, b_minus = nearly_frozen_sets(cur)
    entries, anomalies = [], []
    for s in sorted(cur.pool):
        st = stats[s]
        members = cur.sys.sets[s]
        plus = [x for x in members if x in b_plus]
        minus = [x for x in members if x in b_minus]
        if st.sz <= d:
            for near, threat, case in ((plus, st.th_neg, 1), (minus, st.th_pos, 2)):
                if threat <= bound:
                    continue
                if not near:
                    anomalies.append(s)
                    continue
                value = QQ(st.sz - d - 1, len(near))
                entries.extend(ChargeEntry(x, s, case, value) for x in near)
        else:
            for near, case in ((plus, 3), (minus, 4)):
                if near:
                    value = QQ(st.sz - d, 4 * len(near))
                    entries.extend(ChargeEntry(x, s, case, value) for x in near)
    entries.sort(key=lambda e: (e.element, e.set, e.case))
    return ChargeLedger(entries, b_plus, b_minus, sorted(set(anomalies)))


class ChargeDiagnostics(InvariantReport):
    """
    Checks of the cohort-existence argument on a concrete state. Meant for states at
    which only the cohort-creation step can fire; anywhere else failures are expected.
    """

    labels = ('undercount', 'negcharge', 'prop_neg', 'prop_pos', 'pool_balance', 'many_frozen')

    def __init__(self):
        super().__init__()
        self.ledger = None
        self.negative_elements = []
        self.pool_balance = 0
        self.cohorts = 0

    @property
    def anomalies(self) -> list[int]:
        return self.ledger.anomalies if self.ledger is not None else []

    def summary(self) -> dict:
        return {'anomalies': self.anomalies,
                'cohorts_before': self.cohorts,
                'negative_elements': self.negative_elements,
                'pool_balance': self.pool_balance,
                'verdicts': {v.label: v.holds for v in self.verdicts.values()}}


def many_frozen_check(cur: AlgorithmState, stats: list[SetStats] = None, report: InvariantReport = None):
    """
    For every pool set with ``Sz <= d`` threatened beyond ``2d - delta`` from one side,
    at least ``d/2`` of its elements are nearly frozen to the other side and
    ``Sz >= d - delta/2 - Tw_{delta-1}``.
    """
    if stats is None:
        stats = cur.stats()
    if report is None:
        report = ChargeDiagnostics()
    profile = cur.profile
    d, delta = cur.d, profile.delta
    bound = cur.benign_bound
    floor_sz = d - QQ(delta, 2) - profile.tw[delta - 1]
    b_plus, b_minus = nearly_frozen_sets(cur)
    for s in sorted(cur.pool):
        st = stats[s]
        if st.sz > d:
            continue
        members = cur.sys.sets[s]
        for threat, near in ((st.th_neg, b_plus), (st.th_pos, b_minus)):
            if threat > bound:
                count = sum(1 for x in members if x in near)
                report.visit('many_frozen', 2 * count >= d and st.sz >= floor_sz, set=s, near=count, sz=st.sz)
    return report


def charge_diagnostics(cur: AlgorithmState, stats: list[SetStats] = None) -> ChargeDiagnostics:
    if stats is None:
        stats = cur.stats()
    profile = cur.profile
    d, delta = cur.d, profile.delta
    bound = cur.benign_bound
    report = ChargeDiagnostics()
    ledger = charge_ledger(cur, stats)
    report.ledger = ledger
    report.cohorts = len(cur.cohorts)

    set_totals = ledger.set_totals()
    for s in sorted(cur.pool):
        total = set_totals.get(s, QQ(0))
        report.visit('undercount', total < stats[s].sz - d, set=s, total=total, sz=stats[s].sz)

    totals = ledger.element_totals()
    report.negative_elements = [x for x, t in totals.items() if t < 0]
    if cur.pool:
        report.visit('negcharge', bool(report.negative_elements), elements=len(totals))

    balance = sum(stats[s].sz - d for s in cur.pool)
    report.pool_balance = balance
    report.visit('pool_balance', balance < 0 or (balance == 0 and not cur.cohorts), balance=balance,
                 cohorts=len(cur.cohorts))

    neg_floor = -QQ(delta + 2 * profile.tw[delta - 1] + 2, d)
    pos_floor = QQ(1, 8 + 4 * delta)
    for b in sorted(ledger.b_plus | ledger.b_minus):
        side = 1 if b in ledger.b_plus else -1
        for s in cur.sys.memberships[b]:
            if s not in cur.pool:
                continue
            st = stats[s]
            same, other = (st.th_pos, st.th_neg) if side == 1 else (st.th_neg, st.th_pos)
            if st.sz <= d and other > bound:
                ch = ledger.charge(b, s)
                report.visit('prop_neg', ch >= neg_floor, element=b, set=s, charge=ch)
            elif st.sz >= d + 1 and same > bound:
                ch = ledger.charge(b, s)
                report.visit('prop_pos', ch >= pos_floor, element=b, set=s, charge=ch)

    many_frozen_check(cur, stats, report)
    if not report.ok:
        logger.debug("charge diagnostics: %r, anomalies %s", report, ledger.anomalies)
    return report
