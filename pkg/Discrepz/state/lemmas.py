from __future__ import annotations

import logging

from Discrepz.state.invariants import InvariantReport
from Discrepz.state.state import AlgorithmState
from Discrepz.utilities.type_checker import sign_of

logger = logging.getLogger(__name__)

LEMMA_LABELS = ('bannersign', 'onesided_benign', 'other_chi_bound', 'genonesided', 'Dbound', 'thmonotone')


class LemmaReport(InvariantReport):
    """Verdicts of the consequences of the invariants, evaluated on a concrete state."""

    labels = LEMMA_LABELS


def lemma_checks(cur: AlgorithmState, prev: AlgorithmState | None = None) -> LemmaReport:
    """
    Evaluate the lemma-level properties on ``cur``.

    ``thmonotone`` compares per-set threats with ``prev`` and is skipped without it. The
    lemmas are consequences of the invariants, so a failure here on a state that passes
    ``check_invariants`` points at the checker itself.
    """
    report = LemmaReport()
    profile = cur.profile
    d, delta = cur.d, profile.delta
    bound = 2 * d - delta
    stats = cur.stats()

    for i, c in enumerate(cur.cohorts):
        if c.members:
            report.visit('bannersign', sign_of(cur.chi[c.banner]) == c.sign, cohort=i, banner=c.banner,
                         chi_b=cur.chi[c.banner])
        unmatched = set(c.unmatched())
        for s in sorted(c.members):
            st = stats[s]
            th_eps = st.th_pos if c.sign == 1 else st.th_neg
            report.visit('onesided_benign', th_eps <= bound, cohort=i, set=s, th=th_eps)
            D = cur.defeats.get(s, 0)
            cap = delta + 2 - 2 ** (D + 1)
            for gamma in (profile.alpha / 2, 0):
                lhs = c.sign * st.chi - gamma * th_eps
                report.visit('other_chi_bound', lhs <= cap, cohort=i, set=s, gamma=gamma, lhs=lhs, rhs=cap)
            if s in unmatched and st.th > bound and 0 <= c.rank < delta:
                report.visit('Dbound', D <= 4 * profile.tw[c.rank], cohort=i, set=s, D=D)

    for s, st in enumerate(stats):
        if st.sz > d:
            continue
        if st.th_pos > bound:
            report.visit('genonesided', st.th_neg < delta, set=s, th_neg=st.th_neg)
        if st.th_neg > bound:
            report.visit('genonesided', st.th_pos < delta, set=s, th_pos=st.th_pos)

    if prev is not None:
        for s, (a, b) in enumerate(zip(prev.stats(), stats)):
            report.visit('thmonotone', b.th_pos <= a.th_pos and b.th_neg <= a.th_neg, set=s,
                         before=[a.th_neg, a.th_pos], after=[b.th_neg, b.th_pos])

    if not report.ok:
        logger.debug("lemma check failed: %s", report)
    return report
