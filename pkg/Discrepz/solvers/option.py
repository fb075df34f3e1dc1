from Discrepz.constants.profile import DEFAULT_BIT_CAP

CHECK_MODES = ('off', 'per-step', 'every-k')
RELEASE_RULES = ('tight', 'standard')


class Opt:
    def __init__(self,
                 check_invariants='off',
                 check_every=1,
                 check_lemmas=False,
                 strict=True,
                 trace=False,
                 step_cap=None,
                 bit_cap=DEFAULT_BIT_CAP,
                 residual_sign=1,
                 mirror=False,
                 diagnose_seeds=False,
                 bf_release='tight',
                 pbar=False,
                 stats=False):
        if check_invariants not in CHECK_MODES:
            raise ValueError(f"check_invariants must be one of {CHECK_MODES}, got {check_invariants!r}")
        if int(check_every) < 1:
            raise ValueError(f"check_every must be positive, got {check_every!r}")
        if residual_sign not in (1, -1):
            raise ValueError(f"residual_sign must be +1 or -1, got {residual_sign!r}")
        if bf_release not in RELEASE_RULES:
            raise ValueError(f"bf_release must be one of {RELEASE_RULES}, got {bf_release!r}")
        if step_cap is not None and int(step_cap) < 0:
            raise ValueError(f"step_cap must be nonnegative, got {step_cap!r}")
        self.check_invariants = check_invariants
        self.check_every = int(check_every)
        self.check_lemmas = check_lemmas
        self.strict = strict  # raise on the first violation instead of counting it
        self.trace = trace
        self.step_cap = step_cap
        self.bit_cap = bit_cap
        self.residual_sign = residual_sign
        self.mirror = mirror  # -v first in the walk and residual rounding to -1
        self.diagnose_seeds = diagnose_seeds
        self.bf_release = bf_release
        self.pbar = pbar
        self.stats = stats

    @property
    def prefer(self) -> int:
        return -1 if self.mirror else 1

    @property
    def rounding_sign(self) -> int:
        return -self.residual_sign if self.mirror else self.residual_sign

    def checks_at(self, stage: int) -> bool:
        if self.check_invariants == 'off':
            return False
        if self.check_invariants == 'per-step':
            return True
        return stage % self.check_every == 0

    def __repr__(self):
        fields = ', '.join(f"{k}={v!r}" for k, v in vars(self).items())
        return f"Opt({fields})"
