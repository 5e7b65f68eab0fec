"""Experiment records, serialization, and reproducible randomness.

Records serialize one JSON object per line with lexicographically sorted
keys, or as CSV with a header row.  Timestamps honor SOURCE_DATE_EPOCH
so that identical invocations can produce byte-identical output streams.

Randomized sweeps draw from numpy's Philox generator (64-bit,
counter-based, splittable), seeded explicitly; the algorithm is pinned
here so recorded runs replay across versions.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np


def make_timestamp() -> str:
    """ISO-8601 UTC; SOURCE_DATE_EPOCH overrides the wall clock."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        moment = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    else:
        moment = datetime.now(tz=timezone.utc)
    return moment.replace(microsecond=0).isoformat()


@dataclass(frozen=True)
class ExperimentRecord:
    command: str
    params: dict
    outputs: dict
    timestamp: str = field(default_factory=make_timestamp)

    def to_json_line(self) -> str:
        payload = {
            "command": self.command,
            "params": {k: str(v) for k, v in self.params.items()},
            "outputs": self.outputs,
            "timestamp": self.timestamp,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def emit_json_lines(records, stream) -> None:
    for rec in records:
        stream.write(rec.to_json_line())
        stream.write("\n")


def emit_csv(records, stream) -> None:
    """One tabular CSV for a homogeneous record list: the columns are the
    sorted union of parameter and output keys (outputs win name clashes)."""
    records = list(records)
    if not records:
        return
    param_keys = sorted({k for r in records for k in r.params})
    output_keys = sorted({k for r in records for k in r.outputs})
    header = [k for k in param_keys if k not in output_keys] + output_keys
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for rec in records:
        merged = {**{k: str(v) for k, v in rec.params.items()},
                  **{k: _csv_cell(v) for k, v in rec.outputs.items()}}
        writer.writerow([merged.get(k, "") for k in header])


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render(records, as_csv: bool) -> str:
    buf = io.StringIO()
    if as_csv:
        emit_csv(records, buf)
    else:
        emit_json_lines(records, buf)
    return buf.getvalue()


def rng(seed: int) -> np.random.Generator:
    """The project-wide generator: Philox, seeded explicitly."""
    return np.random.Generator(np.random.Philox(seed))
