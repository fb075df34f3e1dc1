from __future__ import annotations

from Discrepz.solvers.cohortsolver.utilities import *
from Discrepz.solvers.cohortsolver.perturbation import build_equations, row_count
from Discrepz.solvers.cohortsolver.seed import find_seed, seed_violations
from Discrepz.solvers.cohortsolver.charge import charge_diagnostics

logger = logging.getLogger(__name__)

STEP_NAMES = {1: 'move benign pool set',
              2: 'remove empty cohort',
              3: 'round safe element',
              4: 'move benign cohort set',
              5: 'disband cohort with frozen banner',
              6: 'finish match',
              7: 'match unmatched sets',
              8: 'linear perturbation',
              9: 'create cohort'}


def _guard1(cur, stats):
    bound = cur.benign_bound
    for s in sorted(cur.pool):
        if stats[s].th <= bound:
            return {'set': s}


def _guard2(cur, stats):
    for i, c in enumerate(cur.cohorts):
        if not c.members:
            return {'cohort': i}


def _blocked_by_pool(cur, stats, x, sign):
    d, bound = cur.d, cur.benign_bound
    for s in cur.sys.memberships[x]:
        if s in cur.pool:
            st = stats[s]
            threat = st.th_pos if sign == 1 else st.th_neg
            if st.sz >= d + 1 and threat > bound:
                return True
    return False


def _guard3(cur, stats):
    alpha = cur.profile.alpha
    for x in cur.chi.floating():
        v = cur.chi[x]
        if not exceeds_round_threshold(v, alpha):
            continue
        sign = sign_of(v)
        if not _blocked_by_pool(cur, stats, x, sign):
            return {'element': x, 'sign': sign}


def _guard4(cur, stats):
    bound = cur.benign_bound
    for i, c in enumerate(cur.cohorts):
        for s in c.unmatched():
            if stats[s].th <= bound:
                return {'cohort': i, 'set': s}


def _guard5(cur, stats):
    for i, c in enumerate(cur.cohorts):
        if cur.chi.frozen(c.banner):
            return {'cohort': i, 'banner': c.banner}


def _guard6(cur, stats):
    d = cur.d
    for i, c in enumerate(cur.cohorts):
        for a, b in sorted(c.matching):
            D = cur.defeats[a]
            if cur.defeats[b] != D:
                continue
            if stats[a].sz + stats[b].sz + 2 ** (D + 1) - 2 <= d:
                # larger Sz survives, ties to the lower index
                survivor, loser = (a, b) if stats[a].sz >= stats[b].sz else (b, a)
                return {'cohort': i, 'edge': [a, b], 'survivor': survivor, 'loser': loser}


def _guard7(cur, stats):
    for i, c in enumerate(cur.cohorts):
        free = c.unmatched()
        for j, a in enumerate(free):
            for b in free[j + 1:]:
                if cur.defeats[a] == cur.defeats[b]:
                    return {'cohort': i, 'edge': [a, b]}


def _guard8(cur, stats):
    n_rows = row_count(cur)
    floating = len(cur.chi.floating())
    if floating > n_rows:
        return {'rows': n_rows, 'floating': floating}


def _guard9(cur, stats):
    pending = cur.sys.m - len(cur.benign)
    if pending:
        return {'pending': pending}


GUARDS = {1: _guard1, 2: _guard2, 3: _guard3, 4: _guard4, 5: _guard5, 6: _guard6, 7: _guard7, 8: _guard8,
          9: _guard9}


def guard(step: int, cur: AlgorithmState, stats: list[SetStats] = None) -> dict | None:
    """The witness with which ``step`` can fire on ``cur``, or ``None``."""
    if step not in GUARDS:
        raise ValueError(f"Unknown step {step!r}, expected 1..9")
    if stats is None:
        stats = cur.stats()
    return GUARDS[step](cur, stats)


def select_step(cur: AlgorithmState, stats: list[SetStats] = None) -> tuple[int, dict] | None:
    """The first step whose condition holds, greedy over 1..9."""
    if stats is None:
        stats = cur.stats()
    for step in range(1, 10):
        witness = GUARDS[step](cur, stats)
        if witness is not None:
            return step, witness
    return None


def _drop_member(nxt: AlgorithmState, i: int, s: int):
    nxt.cohorts[i].members.discard(s)
    del nxt.defeats[s]


def _execute1(cur, nxt, witness, stats, opt, extras):
    s = witness['set']
    nxt.pool.discard(s)
    nxt.benign.add(s)


def _execute2(cur, nxt, witness, stats, opt, extras):
    del nxt.cohorts[witness['cohort']]


def _execute3(cur, nxt, witness, stats, opt, extras):
    nxt.chi = cur.chi.updated({witness['element']: witness['sign']})


def _execute4(cur, nxt, witness, stats, opt, extras):
    s = witness['set']
    _drop_member(nxt, witness['cohort'], s)
    nxt.benign.add(s)


def _execute5(cur, nxt, witness, stats, opt, extras):
    c = nxt.cohorts.pop(witness['cohort'])
    for s in c.members:
        del nxt.defeats[s]
        nxt.pool.add(s)
    witness['members'] = sorted(c.members)


def _execute6(cur, nxt, witness, stats, opt, extras):
    i = witness['cohort']
    survivor, loser = witness['survivor'], witness['loser']
    nxt.cohorts[i].remove_edge(survivor, loser)
    _drop_member(nxt, i, loser)
    nxt.benign.add(loser)
    if stats[survivor].th <= cur.benign_bound:
        _drop_member(nxt, i, survivor)
        nxt.benign.add(survivor)
        witness['survivor_benign'] = True
    else:
        nxt.defeats[survivor] += 1
        witness['survivor_benign'] = False


def _execute7(cur, nxt, witness, stats, opt, extras):
    a, b = witness['edge']
    nxt.cohorts[witness['cohort']].add_edge(a, b)


def _execute8(cur, nxt, witness, stats, opt, extras):
    lin = build_equations(cur)
    v = kernel_direction(lin)
    if v is None:
        raise EngineError(f"No kernel direction with {witness['floating']} floating elements and "
                          f"{witness['rows']} rows", rows=witness['rows'], floating=witness['floating'])
    walk = walk_to_boundary(cur.chi, v, prefer=opt.prefer)
    broken = [label for label, res in zip(lin.labels, lin.residuals(walk.coloring)) if res != 0]
    if broken:
        raise EngineError(f"Perturbation broke row(s) {broken}", rows=broken)
    nxt.chi = walk.coloring
    witness['direction'] = walk.direction
    witness['t'] = format_rational(walk.t)
    witness['frozen'] = walk.newly_frozen(cur.chi)
    witness['rows_preserved'] = True


def _execute9(cur, nxt, witness, stats, opt, extras):
    seed = find_seed(cur, stats)
    if opt.diagnose_seeds:
        diagnostics = charge_diagnostics(cur, stats)
        witness['diagnostics'] = diagnostics.summary()
        extras['ledger'] = diagnostics.ledger
    if seed is None:
        raise SeedNotFoundError(f"Cohort creation fired with {witness['pending']} non-benign set(s) "
                                f"but no banner has {cur.profile.w} qualifying pool set(s)",
                                pending=witness['pending'], diagnostics=witness.get('diagnostics'))
    problems = seed_violations(cur, seed, stats)
    if problems:
        raise EngineError(f"Cohort seed {seed} is invalid: {'; '.join(problems)}", seed=seed.to_dict())
    nxt.pool.difference_update(seed.members)
    nxt.cohorts.append(Cohort(seed.members, seed.banner, seed.sign, seed.rank))
    for s in seed.members:
        nxt.defeats[s] = 0
    witness.update(seed.to_dict())


EXECUTORS = {1: _execute1, 2: _execute2, 3: _execute3, 4: _execute4, 5: _execute5, 6: _execute6,
             7: _execute7, 8: _execute8, 9: _execute9}


def apply_step(cur: AlgorithmState,
               step: int,
               witness: dict,
               stats: list[SetStats] = None,
               opt: Opt = None,
               extras: dict = None) -> AlgorithmState:
    """
    Apply ``step`` with ``witness`` to a copy of ``cur``. Step-specific results (direction
    and step length of a perturbation, the created seed, the survivor's fate) are written
    back into ``witness``.
    """
    if stats is None:
        stats = cur.stats()
    if opt is None:
        opt = Opt()
    nxt = cur.copy()
    EXECUTORS[step](cur, nxt, witness, stats, opt, {} if extras is None else extras)
    return nxt


def execute(cur: AlgorithmState,
            opt: Opt = None,
            stage: int = 0,
            extras: dict = None) -> tuple[AlgorithmState, StepRecord] | None:
    """
    Run the first fireable step on ``cur``. Returns the new state and its record, or
    ``None`` when no step fires and the run has terminated. Side results that do not
    belong in the trace, such as the charge ledger, are stored in ``extras``.
    """
    stats = cur.stats()
    chosen = select_step(cur, stats)
    if chosen is None:
        return None
    step, witness = chosen
    nxt = apply_step(cur, step, witness, stats, opt, extras)
    record = StepRecord(stage, step, witness, potential(cur), potential(nxt),
                        nxt.chi.frozen_count - cur.chi.frozen_count)
    logger.debug("stage %d: step %d (%s) %s", stage, step, STEP_NAMES[step], witness)
    return nxt, record
