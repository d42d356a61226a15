"""Run records and their JSON-lines / CSV encodings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, TextIO

FORMATS = ("json-lines", "csv")
_FIXED = ("command", "input", "wall_ms")


@dataclass
class RunRecord:
    command: str
    input: str
    params: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    wall_ms: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, allow_nan=False)

    @classmethod
    def from_json(cls, line: str) -> "RunRecord":
        return cls(**json.loads(line))

    def flat(self) -> dict:
        row = {"command": self.command, "input": self.input, "wall_ms": self.wall_ms}
        row.update({f"params.{k}": v for k, v in self.params.items()})
        row.update({f"outputs.{k}": v for k, v in self.outputs.items()})
        return row


def write_records(records: Iterable[RunRecord], fh: TextIO, fmt: str = "json-lines") -> None:
    if fmt == "json-lines":
        for rec in records:
            fh.write(rec.to_json() + "\n")
            fh.flush()
        return
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    rows = [r.flat() for r in records]
    columns = list(_FIXED)
    for row in rows:
        columns += sorted(k for k in row if k not in columns)
    writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n", quoting=csv.QUOTE_ALL)
    writer.writeheader()
    for row in rows:
        # every cell is JSON so that types survive the round trip
        writer.writerow({k: json.dumps(row[k], sort_keys=True) for k in row})


def read_records(text: str, fmt: str = "json-lines") -> list[RunRecord]:
    if fmt == "json-lines":
        return [RunRecord.from_json(line) for line in text.splitlines() if line.strip()]
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        rec = RunRecord("", "")
        for key, cell in row.items():
            if cell == "":
                continue
            value = json.loads(cell)
            if key.startswith("params."):
                rec.params[key[len("params."):]] = value
            elif key.startswith("outputs."):
                rec.outputs[key[len("outputs."):]] = value
            else:
                setattr(rec, key, value)
        out.append(rec)
    return out
