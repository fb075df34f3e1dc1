from __future__ import annotations

import logging

import tqdm
from sympy.polys.domains import QQ

from Discrepz.setsystem import SetSystem, FloatingColoring, discrepancy_of
from Discrepz.solvers.laesolver import LinearSystem, KernelTracker, walk_to_boundary
from Discrepz.solvers.option import Opt
from Discrepz.solvers.parser import instance_io_parser
from Discrepz.solvers.solution import StepRecord, RunResult
from Discrepz.solvers.stats import Stats
from Discrepz.utilities.errors import EngineError
from Discrepz.utilities.profile import count_time
from Discrepz.utilities.type_checker import format_rational

logger = logging.getLogger(__name__)


def classic_bound(d: int, release: str = 'tight') -> int:
    if release == 'standard' or d < 2:
        return max(2 * d - 1, 0)
    return 2 * d - 2


def _active_sets(sz, released, d, release):
    if release == 'standard':
        return [s for s, k in enumerate(sz) if k > d]
    threshold = max(d, 1)
    return [s for s, k in enumerate(sz) if k >= threshold and s not in released]


def _active_system(sys: SetSystem, chi: FloatingColoring, active: list[int]) -> LinearSystem:
    rows = []
    for s in active:
        coeffs = {x: QQ(1) for x in sys.sets[s] if not chi.frozen(x)}
        rows.append((coeffs, sum((chi[x] for x in coeffs), QQ(0))))
    return LinearSystem(rows, chi.floating(), [f"active:{s}" for s in active])


def _stuck_move(sys, chi, fr, active, d):
    """
    Resolve a trivial kernel. Then every active set has ``d`` floating elements, zero sum,
    and ``|Fr| <= d - 1``.
    """
    s = min(active, key=lambda j: (abs(fr[j]), j))
    if abs(fr[s]) <= d - 2 or d == 1:
        return 'release', {'set': s, 'fr': fr[s]}
    active_set = set(active)
    for x in chi.floating():
        signs = {1 if fr[j] > 0 else -1 for j in sys.memberships[x] if j in active_set}
        if len(signs) == 1:
            sign = signs.pop()
            return 'freeze', {'element': x, 'sign': -sign}
    raise EngineError("Trivial kernel but no element lies only in active sets of one frozen sign",
                      active=len(active))


@count_time
@instance_io_parser
def classic_beck_fiala(sys: SetSystem,
                       opt: Opt = None) -> RunResult:
    r"""
    Beck-Fiala floating-color rounding.

    Active sets keep ``chi(S) = 0`` while the coloring walks along kernel directions of
    the active rows until some element freezes. The default rule is the tight one: a set
    stays active while ``Sz >= d``, not only while ``Sz > d``, and a stuck system is
    resolved by releasing a set or by freezing an element against its sets' frozen sign.

    Floating counts and frozen sums are updated only for the sets of newly frozen
    elements. The reduced active rows are carried from step to step by a
    ``KernelTracker``. Rows of sets that have since turned inactive stay in it as extra
    constraints until the carried rows admit no direction, and only then are the active
    rows reduced afresh.

    Parameters
    ==========

    sys : SetSystem
        The instance, or anything ``parse_set_system`` accepts.

    opt : Opt
        The solver options, including:

        - bf_release: 'tight'(default)|'standard'
            'standard' keeps a set active while ``Sz > d`` and guarantees ``2d - 1``.
            'tight' keeps it active while ``Sz >= d``; when the active rows have a trivial
            kernel it releases the set with the smallest ``|Fr|`` if that is at most
            ``d - 2``, otherwise it freezes an element all of whose active sets carry the
            same frozen sign against that sign. This gives ``2d - 2`` for ``d >= 2``.
        - mirror: False(default)|True
        - trace: False(default)|True

    Returns
    =======

    result : RunResult
        ``bound`` is the proven bound of the chosen rule.

    """
    d = sys.d
    release = opt.bf_release
    chi = FloatingColoring.zeros(sys.n)
    released = set()
    sz = [len(members) for members in sys.sets]
    fr = [0] * sys.m
    tracker = None
    stats = Stats('classic')
    trace = [] if opt.trace else None
    bar = tqdm.tqdm(total=sys.n) if opt.pbar else None
    stage = 0
    while chi.floating():
        active = _active_sets(sz, released, d, release)
        if tracker is None:
            tracker = KernelTracker(_active_system(sys, chi, active), active)
        v = tracker.direction()
        if v is None and tracker.keys != frozenset(active):
            tracker = KernelTracker(_active_system(sys, chi, active), active)
            v = tracker.direction()
        progress = chi.frozen_count + len(released)
        if v is not None:
            walk = walk_to_boundary(chi, v, prefer=opt.prefer)
            step = 'perturb'
            newly = walk.newly_frozen(chi)
            witness = {'active': len(active), 'direction': walk.direction, 't': format_rational(walk.t),
                       'frozen': newly}
            new_chi = walk.coloring
        elif release == 'standard':
            raise EngineError(f"Trivial kernel with {len(active)} active set(s) of Sz > d", active=len(active))
        else:
            step, witness = _stuck_move(sys, chi, fr, active, d)
            new_chi = chi
            newly = []
            if step == 'release':
                released.add(witness['set'])
            else:
                newly = [witness['element']]
                new_chi = chi.updated({witness['element']: witness['sign']})
        for x in newly:
            sign = 1 if new_chi[x] == 1 else -1
            for s in sys.memberships[x]:
                sz[s] -= 1
                fr[s] += sign
            tracker.freeze(x)
        stage = stage + 1
        stats.count(step)
        if bar is not None:
            bar.update(len(newly))
        chi = new_chi
        if trace is not None:
            trace.append(StepRecord(stage, step, witness, progress, chi.frozen_count + len(released), len(newly)))
        logger.debug("classic stage %d: %s %s", stage, step, witness)
    if bar is not None:
        bar.close()

    disc = int(discrepancy_of(sys, chi))
    bound = classic_bound(d, release)
    claimed = 'classic-2d-2' if release == 'tight' and d >= 2 else None
    if disc > bound:
        raise EngineError(f"Classic coloring has discrepancy {disc} > {bound}", discrepancy=disc, bound=bound)
    stats.ret = 'terminated'
    logger.info("classic run: n=%d m=%d d=%d, %d steps, discrepancy %d", sys.n, sys.m, d, stats.nstep, disc)
    return RunResult(chi, disc, 'classic', bound, claimed, trace, stats)
