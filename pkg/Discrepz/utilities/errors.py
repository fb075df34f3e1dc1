"""Exception hierarchy; every error knows the CLI exit code it maps to."""
from __future__ import annotations

from typing import Any


class DiscrepzError(Exception):
    exit_code = 1
    kind = "error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def format(self) -> str:
        extra = ", ".join(f"{k}={v}" for k, v in self.details.items() if not k.startswith('_'))
        if extra:
            return f"[{self.kind}] {self.message} ({extra})"
        return f"[{self.kind}] {self.message}"


class InstanceError(DiscrepzError, ValueError):
    exit_code = 2
    kind = "parse"


class OracleCapError(DiscrepzError, ValueError):
    exit_code = 2
    kind = "oracle-cap"


class InfeasibleProfileError(DiscrepzError, ValueError):
    exit_code = 3
    kind = "infeasible-profile"


class TowerOverflowError(InfeasibleProfileError):
    kind = "tower-overflow"


class SeedNotFoundError(DiscrepzError, RuntimeError):
    exit_code = 4
    kind = "step9-abort"

    def __init__(self, message: str, trace=None, state=None, **details):
        super().__init__(message, **details)
        self.trace = trace
        self.state = state


class StepCapExceededError(DiscrepzError, RuntimeError):
    exit_code = 5
    kind = "step-cap"

    def __init__(self, message: str, trace=None, **details):
        super().__init__(message, **details)
        self.trace = trace


class InvariantViolationError(DiscrepzError, RuntimeError):
    exit_code = 6
    kind = "invariant"

    def __init__(self, message: str, label: str = None, witness=None, trace=None, **details):
        super().__init__(message, label=label, witness=witness, **details)
        self.label = label
        self.witness = witness
        self.trace = trace


class EngineError(DiscrepzError, RuntimeError):
    exit_code = 7
    kind = "engine"


class ProfileError(InstanceError):
    kind = "profile"
