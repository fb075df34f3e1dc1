from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from sympy.polys.domains import QQ

from Discrepz.utilities.errors import InfeasibleProfileError, ProfileError, TowerOverflowError
from Discrepz.utilities.type_checker import as_rational, format_rational, is_integer

DEFAULT_BIT_CAP = 2 ** 20


class Unrepresentable:
    """Marker for tower values whose bit length exceeds the configured cap."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'unrepresentable'

    def __reduce__(self):
        return (Unrepresentable, ())


UNREPRESENTABLE = Unrepresentable()


def pow2(exponent, bit_cap: int = DEFAULT_BIT_CAP):
    """``2**exponent``, or the unrepresentable marker past ``bit_cap`` bits."""
    if exponent is UNREPRESENTABLE or exponent > bit_cap:
        return UNREPRESENTABLE
    return 2 ** int(exponent)


def log_star(x: int) -> int:
    """
    Iterated base-2 logarithm: the least t with log^(t)(x) <= 1.

    Computed by comparing x with the tower 1, 2, 4, 16, 65536, ... so no real
    logarithm is ever taken.
    """
    if not is_integer(x) or x < 1:
        raise ValueError(f"log_star needs a positive integer, got {x!r}")
    t, tower = 0, 1
    while x > tower:
        t += 1
        # x <= 2**tower
        if (x - 1).bit_length() <= tower:
            return t
        tower = 2 ** tower
    return t


def r_term(D: int, delta: int) -> int:
    """``R_D = (D-2)*2^D - (2^D-1)*delta + 2``, the term bounding chi(S) inside a cohort."""
    if not is_integer(D) or D < 0:
        raise ValueError(f"Defeat count must be a nonnegative integer, got {D!r}")
    p = 2 ** D
    return (D - 2) * p - (p - 1) * delta + 2


@dataclass(frozen=True)
class ConstantProfile:
    delta: int
    alpha: object
    tw: tuple
    beta: tuple
    w: int
    source: str = 'manual-override'
    d: int | None = None
    bit_cap: int = field(default=DEFAULT_BIT_CAP, compare=False)

    @property
    def feasible(self) -> bool:
        return self.w >= 1 and all(t is not UNREPRESENTABLE for t in self.tw)

    def benign_bound(self, d: int) -> int:
        return 2 * d - self.delta

    def r_term(self, D: int) -> int:
        return r_term(D, self.delta)

    def to_dict(self) -> dict:
        def show(v):
            return 'unrepresentable' if v is UNREPRESENTABLE else v

        return {'delta': self.delta,
                'alpha': format_rational(self.alpha),
                'tw': [show(t) for t in self.tw],
                'beta': [show(b) for b in self.beta],
                'w': self.w,
                'source': self.source}

    def __repr__(self):
        return (f"ConstantProfile(delta={self.delta}, alpha={format_rational(self.alpha)}, "
                f"w={self.w}, source={self.source})")


def _tower_table(delta: int, length: int, bit_cap: int) -> list:
    tw = []
    for r in range(length):
        if r < 2:
            tw.append(delta)
        else:
            tw.append(pow2(8 * tw[r - 2] if tw[r - 2] is not UNREPRESENTABLE else UNREPRESENTABLE,
                           bit_cap))
    return tw


def _assert_tower_shape(profile: ConstantProfile):
    for r, t in enumerate(profile.tw):
        if r < 2:
            assert t == profile.delta, f"Tw_{r} must equal delta"
        elif t is not UNREPRESENTABLE and profile.tw[r - 2] is not UNREPRESENTABLE:
            assert t == 2 ** (8 * profile.tw[r - 2]), f"Tw_{r} breaks the tower recurrence"
        if t is not UNREPRESENTABLE:
            assert profile.beta[r] == 4 * t, f"beta_{r} must equal 4*Tw_{r}"


def paper_profile(d: int,
                  bit_cap: int = DEFAULT_BIT_CAP,
                  allow_infeasible: bool = False) -> ConstantProfile:
    """
    The constant system derived from the degree ``d``.

    Parameters
    ==========

    d : int
        The maximum degree, at least 2.

    bit_cap : int
        Largest bit length a tower value may have before it is treated as unrepresentable.

    allow_infeasible : bool
        Return the profile with ``w = 0`` and marked towers instead of raising. Used for
        reporting.

    Returns
    =======

    profile : ConstantProfile
        ``delta = log*(d)``, ``alpha = 1/4``, ``Tw_0 = Tw_1 = delta``,
        ``Tw_r = 2^(8 Tw_{r-2})``, ``beta_r = 4 Tw_r`` and
        ``W = floor(d / (64 delta^2 Tw_{delta-1}))``.

    """
    if not is_integer(d) or d < 2:
        raise ValueError(f"paper_profile needs an integer d >= 2, got {d!r}")
    delta = log_star(d)
    tw = _tower_table(delta, delta, bit_cap)
    overflow = [r for r, t in enumerate(tw) if t is UNREPRESENTABLE]
    if overflow and not allow_infeasible:
        raise TowerOverflowError(f"Tw_{overflow[0]} exceeds the {bit_cap}-bit cap", d=d, delta=delta)
    beta = [UNREPRESENTABLE if t is UNREPRESENTABLE else 4 * t for t in tw]
    last = tw[-1]
    w = 0 if last is UNREPRESENTABLE else d // (64 * delta ** 2 * last)
    if w < 1 and not allow_infeasible:
        raise InfeasibleProfileError(f"W = floor({d} / (64*{delta}^2*Tw_{delta - 1})) = {w} < 1",
                                     d=d, delta=delta, w=w)
    profile = ConstantProfile(delta, QQ(1, 4), tuple(tw), tuple(beta), w,
                              source='paper-derived-from-d', d=d, bit_cap=bit_cap)
    _assert_tower_shape(profile)
    return profile


def manual_profile(delta: int,
                   w: int,
                   alpha='1/4',
                   tw: Sequence[int] = None,
                   beta: Sequence[int] = None,
                   bit_cap: int = DEFAULT_BIT_CAP) -> ConstantProfile:
    """
    A user-supplied profile. ``tw`` defaults to the tower recurrence and ``beta`` to
    ``4*tw``, so a toy profile only has to choose ``delta`` and ``w``.
    """
    if not is_integer(delta) or delta < 1:
        raise ProfileError(f"delta must be a positive integer, got {delta!r}")
    if not is_integer(w) or w < 1:
        raise ProfileError(f"w must be a positive integer, got {w!r}")
    try:
        alpha = as_rational(alpha)
    except (TypeError, ValueError) as e:
        raise ProfileError(f"alpha: {e}")
    if not 0 < alpha < 1:
        raise ProfileError(f"alpha must lie in (0, 1), got {format_rational(alpha)}")
    if tw is None:
        tw = _tower_table(delta, delta, bit_cap)
        if any(t is UNREPRESENTABLE for t in tw):
            raise TowerOverflowError(f"Default tower for delta={delta} exceeds the {bit_cap}-bit cap")
    tw = list(tw)
    if beta is None:
        beta = [4 * t for t in tw]
    beta = list(beta)
    for name, table in (('tw', tw), ('beta', beta)):
        if len(table) != delta:
            raise ProfileError(f"{name} must have delta={delta} entries, got {len(table)}")
        for r, v in enumerate(table):
            if not is_integer(v) or v < 1:
                raise ProfileError(f"{name}[{r}] must be a positive integer, got {v!r}")
    return ConstantProfile(int(delta), alpha, tuple(int(t) for t in tw), tuple(int(b) for b in beta),
                           int(w), source='manual-override', bit_cap=bit_cap)


def profile_from_dict(doc: dict, bit_cap: int = DEFAULT_BIT_CAP) -> ConstantProfile:
    if not isinstance(doc, dict):
        raise ProfileError(f"Profile document must be a JSON object, got {type(doc).__name__}")
    missing = {'delta', 'alpha', 'tw', 'beta', 'w'} - set(doc)
    if missing:
        raise ProfileError(f"Profile document misses key(s) {sorted(missing)}")
    if not isinstance(doc['tw'], list) or not isinstance(doc['beta'], list):
        raise ProfileError("'tw' and 'beta' must be lists of integers")
    return manual_profile(doc['delta'], doc['w'], alpha=doc['alpha'], tw=doc['tw'], beta=doc['beta'],
                          bit_cap=bit_cap)
