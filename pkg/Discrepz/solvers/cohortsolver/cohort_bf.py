from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Iterable

import tqdm

from Discrepz.constants.inequalities import check_inequalities
from Discrepz.solvers.cohortsolver.utilities import *
from Discrepz.solvers.cohortsolver.steps import execute
from Discrepz.solvers.parser import cohort_io_parser
from Discrepz.utilities.errors import DiscrepzError
from Discrepz.utilities.profile import count_time

logger = logging.getLogger(__name__)


def round_residual(cur: AlgorithmState, sign: int = 1) -> FloatingColoring:
    """
    Set every floating element to ``sign``. Only valid once every set is benign: each set
    then ends with ``|chi(S)| <= Th(S) <= 2d - delta`` whatever the rounding.
    """
    if not cur.settled():
        raise EngineError(f"Residual rounding with {cur.sys.m - len(cur.benign)} set(s) outside B")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return cur.chi.updated({x: sign for x in cur.chi.floating()})


def _check(prev, cur, stage, opt, stats, trace):
    report = check_invariants(prev, cur)
    stats.ncheck = stats.ncheck + 1
    failed = report.first_violation()
    if failed is None and opt.check_lemmas:
        failed = lemma_checks(cur, prev).first_violation()
    if failed is None:
        return 'pass'
    stats.violations = stats.violations + 1
    if opt.strict:
        raise InvariantViolationError(f"{failed.label} fails at stage {stage}: {failed.witness}",
                                      label=failed.label, witness=failed.witness, trace=trace)
    warnings.warn(f"{failed.label} fails at stage {stage}: {failed.witness}")
    return 'fail'


def _claimed(profile: ConstantProfile, d: int) -> str | None:
    if profile.source != 'paper-derived-from-d':
        return None
    return 'cohort-2d-delta' if check_inequalities(profile, d).all_hold else None


@count_time
@cohort_io_parser
def cohort_bf(sys: SetSystem,
              profile: ConstantProfile,
              opt: Opt = None) -> RunResult:
    r"""
    The cohort algorithm for a ``2d - delta`` coloring.

    Parameters
    ==========

    sys : SetSystem
        The instance, or anything ``parse_set_system`` accepts.

    profile : ConstantProfile | dict | None
        The constants. ``None`` derives them from the degree, which is infeasible at any
        desk-scale ``d``; tests and experiments pass a manual profile.

    opt : Opt
        The solver options, including:

        - check_invariants: 'off'(default)|'per-step'|'every-k'
        - strict: True(default)|False
            Raise on the first invariant violation instead of counting it.
        - trace: False(default)|True
        - step_cap: None(default)|int
            None means ``10 d |X| (|X| + 4|F|)``.
        - diagnose_seeds: False(default)|True
            Attach charge diagnostics to every cohort-creation record.
        - mirror: False(default)|True

    Returns
    =======

    result : RunResult
        The all-frozen coloring with its discrepancy, step counts and optional trace.

    Raises
    ======

    SeedNotFoundError
        Cohort creation fired but no seed exists, possible under profiles that break the
        constant inequalities.
    StepCapExceededError
    InvariantViolationError
        Only with checking enabled and ``strict``.

    """
    _check_profile(sys, profile)
    return _drive(init_state(sys, profile), opt)


@count_time
def resume_cohort_bf(cur: AlgorithmState,
                     opt: Opt = None) -> RunResult:
    """
    Continue the cohort algorithm from a mid-run state, for instance one restored from a
    failure or built by hand. ``cur`` is copied, not mutated. With checking enabled the
    state is checked at stage 0 before the first step.
    """
    if opt is None:
        opt = Opt()
    if not cur.partition_ok():
        raise ValueError("B, the pool and the cohorts do not partition the family")
    _check_profile(cur.sys, cur.profile)
    return _drive(cur.copy(), opt)


def _check_profile(sys: SetSystem, profile: ConstantProfile):
    if not profile.feasible:
        raise InfeasibleProfileError(f"Profile {profile!r} has W={profile.w}", w=profile.w)
    if 2 * sys.d - profile.delta < 0:
        raise InfeasibleProfileError(f"2d - delta = {2 * sys.d - profile.delta} < 0", d=sys.d,
                                     delta=profile.delta)


def _drive(cur: AlgorithmState, opt: Opt) -> RunResult:
    sys, profile = cur.sys, cur.profile
    bound = step_count_bound(sys)
    cap = opt.step_cap if opt.step_cap is not None else 10 * bound
    stats = Stats('cohort')
    trace = [] if opt.trace else None
    ledger = None
    if opt.checks_at(0):
        _check(None, cur, 0, opt, stats, trace)

    bar = tqdm.tqdm(total=sys.m) if opt.pbar else None
    stage = 0
    try:
        while True:
            extras = {}
            out = execute(cur, opt, stage + 1, extras)
            ledger = extras.get('ledger', ledger)
            if out is None:
                break
            if stats.nstep >= cap:
                stats.ret = 'step-cap'
                raise StepCapExceededError(f"Step cap {cap} reached before termination", cap=cap)
            stage = stage + 1
            nxt, record = out
            stats.count(record.step)
            if opt.checks_at(stage):
                record.invariants = _check(cur, nxt, stage, opt, stats, trace)
            if trace is not None:
                trace.append(record)
            if bar is not None:
                bar.update(len(nxt.benign) - len(cur.benign))
            cur = nxt
    except DiscrepzError as e:
        if isinstance(e, SeedNotFoundError):
            stats.ret = 'seed-abort'
        e.trace = trace
        e.state = cur
        e.ledger = extras.get('ledger', ledger)
        raise
    finally:
        if bar is not None:
            bar.close()

    coloring = round_residual(cur, opt.rounding_sign)
    disc = int(discrepancy_of(sys, coloring))
    claimed = _claimed(profile, sys.d)
    if claimed is not None and stats.nstep > bound:
        raise EngineError(f"{stats.nstep} steps exceed d|X|(|X|+4|F|) = {bound}", steps=stats.nstep)
    if disc > cur.benign_bound:
        warnings.warn(f"Discrepancy {disc} exceeds 2d - delta = {cur.benign_bound}")
    stats.ret = 'terminated'
    logger.info("cohort run: n=%d m=%d d=%d, %d steps, discrepancy %d (bound %d)", sys.n, sys.m, sys.d,
                stats.nstep, disc, cur.benign_bound)
    return RunResult(coloring, disc, 'cohort', cur.benign_bound, claimed, trace, stats, cur, ledger)


def run_batch(systems: Iterable,
              profile=None,
              opt: Opt = None,
              workers: int = 1,
              mode: str = 'cohort') -> list:
    """
    Run independent instances, in parallel when ``workers > 1``. Each entry of the result
    is a RunResult or the DiscrepzError the instance raised, in input order.
    """
    from Discrepz.solvers.bfsolver import classic_beck_fiala

    if mode not in ('cohort', 'classic'):
        raise ValueError(f"mode must be 'cohort' or 'classic', got {mode!r}")

    def one(sys):
        try:
            if mode == 'classic':
                return classic_beck_fiala(sys, opt)
            return cohort_bf(sys, profile, opt)
        except DiscrepzError as e:
            return e

    systems = list(systems)
    if workers <= 1:
        return [one(sys) for sys in systems]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, systems))
