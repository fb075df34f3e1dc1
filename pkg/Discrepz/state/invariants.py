from __future__ import annotations

import logging
from dataclasses import dataclass

import pandas as pd

from Discrepz.constants.profile import r_term
from Discrepz.state.state import AlgorithmState
from Discrepz.utilities.type_checker import format_rational

logger = logging.getLogger(__name__)

INVARIANT_LABELS = tuple(f"I{k}" for k in range(1, 19))


@dataclass
class InvariantVerdict:
    label: str
    holds: bool = True
    witness: dict | None = None
    checked: int = 0


class InvariantReport:
    """One verdict per labelled invariant, with the first counterexample found."""

    labels = INVARIANT_LABELS

    def __init__(self):
        self.verdicts = {label: InvariantVerdict(label) for label in self.labels}

    def visit(self, label: str, ok: bool, **witness):
        v = self.verdicts[label]
        v.checked += 1
        if not ok and v.holds:
            v.holds = False
            v.witness = {k: (format_rational(w) if not isinstance(w, (int, str, list, tuple)) else w)
                         for k, w in witness.items()}

    @property
    def ok(self) -> bool:
        return all(v.holds for v in self.verdicts.values())

    def violations(self) -> list[InvariantVerdict]:
        return [v for v in self.verdicts.values() if not v.holds]

    def first_violation(self) -> InvariantVerdict | None:
        bad = self.violations()
        return bad[0] if bad else None

    def __getitem__(self, label: str) -> InvariantVerdict:
        return self.verdicts[label]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{'label': v.label, 'holds': v.holds, 'checked': v.checked,
                              'witness': v.witness} for v in self.verdicts.values()])

    def __repr__(self):
        bad = [v.label for v in self.violations()]
        return f"{type(self).__name__}(ok={self.ok}, violated={bad})"


def check_invariants(prev: AlgorithmState | None, cur: AlgorithmState) -> InvariantReport:
    """
    Evaluate I1-I18 exactly on ``cur``. I1 is a transition predicate and is only checked
    when ``prev`` is given.
    """
    report = InvariantReport()
    sys, profile, chi = cur.sys, cur.profile, cur.chi
    d = sys.d
    delta, alpha, w = profile.delta, profile.alpha, profile.w
    half_alpha = alpha / 2
    bound = 2 * d - delta
    stats = cur.stats()

    if prev is not None:
        for x in range(sys.n):
            if prev.chi.frozen(x):
                report.visit('I1', chi.frozen(x), element=x)

    for s in sorted(cur.benign):
        report.visit('I2', stats[s].th <= bound, set=s, th=stats[s].th)

    for s, st in enumerate(stats):
        if st.sz <= d:
            report.visit('I3', st.th <= 2 * d, set=s, sz=st.sz, th=st.th)

    for s in sorted(cur.pool):
        st = stats[s]
        r = 2 * d - st.th_pos
        if r < delta:
            if st.sz >= d:
                report.visit('I12', st.chi <= 0, set=s, chi=st.chi, r=r)
            if st.sz <= d and r >= 0:
                report.visit('I12', st.chi <= profile.tw[r] - half_alpha * st.th_neg, set=s, chi=st.chi, r=r)
        r = 2 * d - st.th_neg
        if r < delta:
            if st.sz >= d:
                report.visit('I13', -st.chi <= 0, set=s, chi=st.chi, r=r)
            if st.sz <= d and r >= 0:
                report.visit('I13', -st.chi <= profile.tw[r] - half_alpha * st.th_pos, set=s, chi=st.chi, r=r)

    banner_need = {}
    for i, c in enumerate(cur.cohorts):
        b = c.banner
        containing = set(sys.memberships[b])
        ok_rank = 0 <= c.rank < delta
        tw = profile.tw[c.rank] if ok_rank else None
        beta = profile.beta[c.rank] if ok_rank else None
        chi_b = chi[b]
        banner_need[b] = banner_need.get(b, 0) + (w - len(c.members))

        for s in sorted(c.members):
            report.visit('I4', s in containing, cohort=i, set=s, banner=b)

        seen = set()
        for a, b2 in sorted(c.matching):
            report.visit('I5', a != b2 and a in c.members and b2 in c.members and a not in seen
                          and b2 not in seen, cohort=i, edge=[a, b2])
            seen.update((a, b2))
            report.visit('I6', cur.defeats.get(a) == cur.defeats.get(b2), cohort=i, edge=[a, b2])

        report.visit('I11', sum(2 ** cur.defeats.get(s, 0) for s in c.members) <= w, cohort=i)

        for s in sorted(c.members):
            st = stats[s]
            D = cur.defeats.get(s, 0)
            report.visit('I7', st.sz <= d + 1 - 2 ** D, cohort=i, set=s, sz=st.sz, D=D)
            if c.sign == 1:
                report.visit('I8', st.th_pos <= delta + 2 - 2 ** (D + 1), cohort=i, set=s, th_pos=st.th_pos)
            else:
                report.visit('I9', st.th_neg <= delta + 2 - 2 ** (D + 1), cohort=i, set=s, th_neg=st.th_neg)
            report.visit('I18', ok_rank and D <= 4 * tw, cohort=i, set=s, D=D, rank=c.rank)

        if not ok_rank:
            continue

        for s in c.unmatched():
            st = stats[s]
            D = cur.defeats.get(s, 0)
            p = 2 ** D
            R = r_term(D, delta)
            if c.sign == -1:
                lhs = st.chi + p * beta * (chi_b + 1 - alpha)
                rhs = p * tw - half_alpha * st.th_neg - R
                report.visit('I14', lhs <= rhs, cohort=i, set=s, lhs=lhs, rhs=rhs)
            else:
                lhs = -st.chi - p * beta * (chi_b - 1 + alpha)
                rhs = p * tw - half_alpha * st.th_pos - R
                report.visit('I15', lhs <= rhs, cohort=i, set=s, lhs=lhs, rhs=rhs)

        for a, b2 in sorted(c.matching):
            sa, sb = stats[a], stats[b2]
            D = cur.defeats.get(a, 0)
            p = 2 ** (D + 1)
            R = r_term(D, delta)
            if c.sign == -1:
                lhs = sa.chi + sb.chi + p * beta * (chi_b + 1 - alpha)
                rhs = p * tw - half_alpha * (sa.th_neg + sb.th_neg) - 2 * R
                report.visit('I16', lhs <= rhs, cohort=i, edge=[a, b2], lhs=lhs, rhs=rhs)
            else:
                lhs = -sa.chi - sb.chi - p * beta * (chi_b - 1 + alpha)
                rhs = p * tw - half_alpha * (sa.th_pos + sb.th_pos) - 2 * R
                report.visit('I17', lhs <= rhs, cohort=i, edge=[a, b2], lhs=lhs, rhs=rhs)

    for b, need in sorted(banner_need.items()):
        have = sum(1 for s in sys.memberships[b] if s in cur.benign)
        report.visit('I10', have >= need, element=b, have=have, need=need)

    if not report.ok:
        logger.debug("invariant check failed: %s", report)
    return report
