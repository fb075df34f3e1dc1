from Discrepz.state.cohort import Cohort
from Discrepz.state.state import AlgorithmState, init_state, potential
from Discrepz.state.invariants import InvariantReport, InvariantVerdict, check_invariants, INVARIANT_LABELS
from Discrepz.state.lemmas import LemmaReport, lemma_checks, LEMMA_LABELS
