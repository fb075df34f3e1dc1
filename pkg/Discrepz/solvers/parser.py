from typing import Callable, Any
import functools

from Discrepz.constants.profile import ConstantProfile, paper_profile, profile_from_dict
from Discrepz.setsystem import SetSystem, parse_set_system
from Discrepz.solvers.option import Opt
from Discrepz.utilities.errors import InfeasibleProfileError


def _as_system(sys) -> SetSystem:
    if isinstance(sys, SetSystem):
        return sys
    return parse_set_system(sys)


def _as_profile(profile, sys: SetSystem, opt: Opt) -> ConstantProfile:
    if isinstance(profile, ConstantProfile):
        return profile
    if profile is None or profile == 'paper':
        if sys.d < 2:
            raise InfeasibleProfileError(f"The derived profile needs d >= 2, the instance has d={sys.d}", d=sys.d)
        return paper_profile(sys.d, bit_cap=opt.bit_cap)
    return profile_from_dict(profile, bit_cap=opt.bit_cap)


def instance_io_parser(func: Callable[..., Any]) -> Callable[..., Any]:
    """
    The parser is used to:
     1. Accept a SetSystem, an instance dict or instance JSON text.
     2. Fill in default options.
    """

    @functools.wraps(func)
    def wrapper(sys, opt: Opt = None):
        if opt is None:
            opt = Opt()
        return func(_as_system(sys), opt)

    return wrapper


def cohort_io_parser(func: Callable[..., Any]) -> Callable[..., Any]:
    """
    The parser is used to:
     1. Accept a SetSystem, an instance dict or instance JSON text.
     2. Resolve the profile: a ConstantProfile, a profile dict, or ``None``/``'paper'``
        for the profile derived from the instance degree.
     3. Fill in default options.
    """

    @functools.wraps(func)
    def wrapper(sys, profile=None, opt: Opt = None):
        if opt is None:
            opt = Opt()
        sys = _as_system(sys)
        return func(sys, _as_profile(profile, sys, opt), opt)

    return wrapper
