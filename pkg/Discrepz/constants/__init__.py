from Discrepz.constants.profile import (ConstantProfile, UNREPRESENTABLE, DEFAULT_BIT_CAP, log_star, r_term,
                                        paper_profile, manual_profile, profile_from_dict, pow2)
from Discrepz.constants.inequalities import InequalityReport, InequalityEntry, check_inequalities
