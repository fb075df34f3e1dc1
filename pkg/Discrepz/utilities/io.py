from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import pandas as pd

from Discrepz.constants.profile import ConstantProfile, profile_from_dict, DEFAULT_BIT_CAP
from Discrepz.setsystem import SetSystem, parse_set_system
from Discrepz.solvers.solution import StepRecord, RunResult
from Discrepz.utilities.errors import InstanceError, ProfileError


def _read_json(path, error=InstanceError):
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise error(f"Cannot read {path}: {e.strerror}", path=str(path))
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise error(f"Malformed JSON in {path}: {e.msg} at line {e.lineno}", path=str(path))


def read_instance(path) -> SetSystem:
    return parse_set_system(_read_json(path))


def read_coloring(path) -> list:
    """A coloring document ``{"colors": [...]}`` or a bare JSON list."""
    doc = _read_json(path)
    colors = doc.get('colors') if isinstance(doc, dict) else doc
    if not isinstance(colors, list):
        raise InstanceError(f"{path} holds no 'colors' list")
    return colors


def read_profile(path, bit_cap: int = DEFAULT_BIT_CAP) -> ConstantProfile:
    return profile_from_dict(_read_json(path, ProfileError), bit_cap=bit_cap)


def coloring_document(result: RunResult) -> dict:
    return {'colors': result.signs, 'discrepancy': result.discrepancy}


def dumps(doc) -> str:
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)


def trace_line(record: StepRecord) -> str:
    return dumps(record.to_dict())


@dataclass
class TraceWriter:
    """
    Writes StepRecords as newline-delimited JSON. Keys are sorted, so equal traces are
    byte-identical.
    """

    path: Path

    def __post_init__(self):
        if not isinstance(self.path, Path):
            self.path = Path(self.path)
        if not str(self.path):
            raise ValueError("TraceWriter.path must be non-empty")
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text('', encoding='utf-8')

    def append(self, record: StepRecord):
        with self.path.open('a', encoding='utf-8') as f:
            f.write(trace_line(record) + '\n')

    def extend(self, records: Iterable[StepRecord]):
        with self.path.open('a', encoding='utf-8') as f:
            for record in records:
                f.write(trace_line(record) + '\n')


def write_trace(path, trace: Iterable[StepRecord]):
    TraceWriter(path).extend(trace)


def read_trace(path) -> list[StepRecord]:
    records = []
    with Path(path).open(encoding='utf-8') as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                records.append(StepRecord.from_dict(json.loads(line)))
            except (json.JSONDecodeError, ValueError, TypeError) as e:
                raise InstanceError(f"{path}:{lineno}: bad trace record: {e}", path=str(path), line=lineno)
    return records


def write_json(path, doc):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=1, sort_keys=True) + '\n', encoding='utf-8')


def write_snapshot(path, state):
    write_json(path, state.snapshot())


def trace_frame(trace: Iterable[StepRecord]) -> pd.DataFrame:
    columns = ['stage', 'step', 'potential_before', 'potential_after', 'frozen_delta', 'invariants']
    df = pd.DataFrame([{k: getattr(r, k) for k in columns} for r in trace], columns=columns)
    df['frozen'] = df['frozen_delta'].cumsum()
    return df


def inspect_trace(trace: Iterable[StepRecord]) -> dict:
    """
    Step histogram, the potential verdict and the frozen-count profile of a trace.

    Cohort potential must rise at every step but disbanding (step 5). Cohort creation
    (step 9) adds ``W - 1``, so a flat step 9 is flagged too. Classic progress must rise at
    every step.
    """
    df = trace_frame(trace)
    exempt = df['step'] == 5
    falling = df[~exempt & (df['potential_after'] <= df['potential_before'])]
    return {'steps': len(df),
            'histogram': {str(k): int(v) for k, v in df['step'].astype(str).value_counts().sort_index().items()},
            'potential_monotone': bool(falling.empty),
            'non_increasing_stages': [int(s) for s in falling['stage']],
            'frozen_profile': [int(v) for v in df['frozen']],
            'invariant_failures': int((df['invariants'] == 'fail').sum())}
