from __future__ import annotations

import logging

from sympy.polys.domains import QQ

from Discrepz.setsystem import SetSystem, FloatingColoring
from Discrepz.solvers.laesolver import LinearSystem
from Discrepz.state import AlgorithmState

logger = logging.getLogger(__name__)


def _row(sys: SetSystem, chi: FloatingColoring, sets, banner=None, clamp=0):
    coeffs = {}
    for s in sets:
        for x in sys.sets[s]:
            if not chi.frozen(x):
                coeffs[x] = coeffs.get(x, 0) + 1
    if banner is not None and clamp and not chi.frozen(banner):
        coeffs[banner] = coeffs.get(banner, 0) + clamp
    rhs = sum((c * chi[x] for x, c in coeffs.items()), QQ(0))
    return {x: QQ(c) for x, c in sorted(coeffs.items())}, rhs


def row_count(cur: AlgorithmState) -> int:
    """``N = |G| + sum_i (|C_i| - |M_i|)``."""
    return len(cur.pool) + sum(len(c.members) - len(c.matching) for c in cur.cohorts)


def build_equations(cur: AlgorithmState) -> LinearSystem:
    """
    The equations kept fixed by a linear perturbation.

    Every pool set fixes its own sum. An unmatched cohort set fixes its sum plus the
    clamped banner term ``2^D beta_r tau(b)``; a matching edge fixes the sum over both
    sets plus ``2^(D+1) beta_r tau(b)``. Frozen elements are folded into the right-hand
    side, so the current coloring satisfies every row exactly.
    """
    sys, chi = cur.sys, cur.chi
    rows, labels = [], []
    for s in sorted(cur.pool):
        rows.append(_row(sys, chi, [s]))
        labels.append(f"pool:{s}")
    for i, c in enumerate(cur.cohorts):
        beta = cur.profile.beta[c.rank]
        for s in c.unmatched():
            rows.append(_row(sys, chi, [s], c.banner, 2 ** cur.defeats[s] * beta))
            labels.append(f"cohort:{i}:{s}")
        for a, b in sorted(c.matching):
            rows.append(_row(sys, chi, [a, b], c.banner, 2 ** (cur.defeats[a] + 1) * beta))
            labels.append(f"edge:{i}:{a}-{b}")
    lin = LinearSystem(rows, chi.floating(), labels)
    logger.debug("built %r", lin)
    return lin
