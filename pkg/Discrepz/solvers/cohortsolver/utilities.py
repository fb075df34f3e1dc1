from __future__ import annotations

import logging
import warnings

from sympy.polys.domains import QQ

from Discrepz.constants.profile import ConstantProfile
from Discrepz.setsystem import SetSystem, FloatingColoring, SetStats, all_set_stats, discrepancy_of
from Discrepz.state import AlgorithmState, Cohort, init_state, potential, check_invariants, lemma_checks
from Discrepz.solvers.laesolver import LinearSystem, kernel_direction, walk_to_boundary, BoundaryWalk
from Discrepz.solvers.option import Opt
from Discrepz.solvers.stats import Stats
from Discrepz.solvers.solution import StepRecord, RunResult
from Discrepz.utilities.errors import (EngineError, SeedNotFoundError, StepCapExceededError,
                                       InvariantViolationError, InfeasibleProfileError)
from Discrepz.utilities.type_checker import format_rational, sign_of


def exceeds_round_threshold(value, alpha) -> bool:
    """``|chi(x)| > 1 - alpha``, the strict test of the rounding and cohort steps."""
    return abs(value) > 1 - alpha


def step_count_bound(sys: SetSystem) -> int:
    """``d |X| (|X| + 4|F|)``."""
    return sys.d * sys.n * (sys.n + 4 * sys.m)
