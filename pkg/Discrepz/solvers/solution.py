from __future__ import annotations

from Discrepz.setsystem import FloatingColoring
from Discrepz.solvers.stats import Stats

RECORD_FIELDS = ('stage', 'step', 'witnesses', 'potential_before', 'potential_after', 'frozen_delta',
                 'invariants')


class StepRecord:
    """
    One executed step. ``step`` is 1..9 in cohort mode and one of ``perturb``, ``release``,
    ``freeze`` in classic mode; ``invariants`` is ``pass``/``fail`` when checking ran and
    ``None`` otherwise.
    """
    __slots__ = list(RECORD_FIELDS)

    def __init__(self,
                 stage: int,
                 step,
                 witnesses: dict,
                 potential_before: int,
                 potential_after: int,
                 frozen_delta: int,
                 invariants: str | None = None):
        self.stage = stage
        self.step = step
        self.witnesses = witnesses
        self.potential_before = potential_before
        self.potential_after = potential_after
        self.frozen_delta = frozen_delta
        self.invariants = invariants

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in RECORD_FIELDS}

    @classmethod
    def from_dict(cls, doc: dict) -> StepRecord:
        missing = set(RECORD_FIELDS) - {'invariants'} - set(doc)
        if missing:
            raise ValueError(f"Trace record misses field(s) {sorted(missing)}")
        return cls(**{k: doc.get(k) for k in RECORD_FIELDS})

    def __eq__(self, other):
        if not isinstance(other, StepRecord):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return (f"StepRecord(stage={self.stage}, step={self.step}, "
                f"I: {self.potential_before} -> {self.potential_after})")


class RunResult:
    __slots__ = ['coloring', 'discrepancy', 'mode', 'bound', 'guarantee_claimed', 'trace', 'stats', 'state',
                 'ledger']

    def __init__(self,
                 coloring: FloatingColoring,
                 discrepancy: int,
                 mode: str,
                 bound: int | None = None,
                 guarantee_claimed: str | None = None,
                 trace: list[StepRecord] | None = None,
                 stats: Stats | None = None,
                 state=None,
                 ledger=None):
        self.coloring = coloring
        self.discrepancy = discrepancy
        self.mode = mode
        self.bound = bound
        self.guarantee_claimed = guarantee_claimed
        self.trace = trace
        self.stats = Stats(mode) if stats is None else stats
        self.state = state
        self.ledger = ledger

    @property
    def signs(self) -> list[int]:
        return self.coloring.signs()

    @property
    def steps_executed(self) -> int:
        return self.stats.nstep

    @property
    def step_histogram(self) -> dict:
        return dict(self.stats.histogram)

    def to_dict(self) -> dict:
        return {'coloring': self.signs,
                'discrepancy': self.discrepancy,
                'mode': self.mode,
                'bound': self.bound,
                'guarantee': self.guarantee_claimed,
                'steps': self.steps_executed,
                'histogram': {str(k): v for k, v in sorted(self.step_histogram.items(), key=lambda kv: str(kv[0]))}}

    def __repr__(self):
        return (f"RunResult(mode={self.mode}, discrepancy={self.discrepancy}, bound={self.bound}, "
                f"steps={self.steps_executed})")
