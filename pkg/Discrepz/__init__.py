from Discrepz.setsystem import (SetSystem, FloatingColoring, SetStats, parse_set_system, set_stats, all_set_stats,
                                discrepancy_of, verify_coloring)
from Discrepz.constants import (ConstantProfile, paper_profile, manual_profile, profile_from_dict, log_star,
                                r_term, check_inequalities, InequalityReport)
from Discrepz.state import (AlgorithmState, Cohort, init_state, potential, check_invariants, lemma_checks,
                            InvariantReport)
from Discrepz.solvers import *
from Discrepz.oracle import brute_force_discrepancy, brute_force_coloring, GeneratorSpec, generate
from Discrepz.utilities.errors import *
from Discrepz.utilities.io import (read_instance, read_coloring, read_profile, read_trace, write_trace, TraceWriter,
                                   inspect_trace)
from Discrepz.utilities.profile import count_time

from importlib.metadata import version, PackageNotFoundError

try:
    __version__ = version("Discrepz")
except PackageNotFoundError:
    # package is not installed
    pass
