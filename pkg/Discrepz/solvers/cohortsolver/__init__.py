from Discrepz.solvers.cohortsolver.perturbation import build_equations, row_count
from Discrepz.solvers.cohortsolver.seed import CohortSeed, nearly_frozen_sets, find_seed, seed_violations
from Discrepz.solvers.cohortsolver.charge import (ChargeEntry, ChargeLedger, ChargeDiagnostics, charge_ledger,
                                                  charge_diagnostics, many_frozen_check)
from Discrepz.solvers.cohortsolver.steps import guard, select_step, apply_step, execute, STEP_NAMES
from Discrepz.solvers.cohortsolver.cohort_bf import cohort_bf, resume_cohort_bf, round_residual, run_batch
