"""Machine-readable result records: JSON, CSV and an append-only JSON-lines cache."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import threading
from dataclasses import dataclass, field
from typing import Iterable, Optional

SCHEMA_VERSION = 1
CACHE_ENV = "LPEXTREMAL_CACHE"
DEFAULT_CACHE = "lpextremal-cache.jsonl"


def default_cache_path() -> str:
    return os.environ.get(CACHE_ENV, DEFAULT_CACHE)


@dataclass
class ResultRecord:
    """One command result.

    ``metadata`` holds the run-dependent fields (wall time, timestamp); all
    other blocks are deterministic functions of the inputs.
    """

    command: str
    inputs: dict
    outputs: dict
    provenance: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schemaVersion": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "provenance": self.provenance,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ResultRecord:
        if "schemaVersion" not in d:
            raise ValueError("record lacks schemaVersion")
        return cls(d["command"], d["inputs"], d["outputs"], d.get("provenance", {}),
                   d.get("metadata", {}), d["schemaVersion"])

    def to_json(self) -> str:
        # float repr is the shortest string that round-trips exactly
        return json.dumps(self.to_dict(), sort_keys=True, default=_plain)

    @classmethod
    def from_json(cls, text: str) -> ResultRecord:
        return cls.from_dict(json.loads(text))

    def key(self) -> tuple:
        i = self.inputs
        interval = tuple(i.get("interval", ()))
        return (self.command, i.get("n"), i.get("p"), interval, i.get("tol"))


def _plain(o):
    """numpy scalars and arrays as plain Python values."""
    if hasattr(o, "tolist"):
        return o.tolist()
    raise TypeError(f"{type(o).__name__} is not JSON serializable")


def _fmt(v) -> str:
    if hasattr(v, "item") and not hasattr(v, "__len__"):
        v = v.item()
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        if any(isinstance(x, (dict, list)) for x in v):
            return json.dumps(v, sort_keys=True)
        return ";".join(_fmt(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True) if v else ""
    return str(v)


def flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        name = f"{prefix}{k}"
        if isinstance(v, dict) and v:
            out.update(flatten(v, name + "."))
        else:
            out[name] = v
    return out


def to_csv(records: Iterable[ResultRecord], human: bool = False) -> str:
    rows = [flatten(r.to_dict()) for r in records]
    header = []
    for r in rows:
        header.extend(k for k in r if k not in header)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_human(r.get(k)) if human else _fmt(r.get(k)) for k in header])
    return buf.getvalue()


def _human(v) -> str:
    if isinstance(v, float) and math.isfinite(v):
        return format(v, ".6g")
    if isinstance(v, (list, tuple)):
        return ";".join(_human(x) for x in v)
    return _fmt(v)


def human_summary(rec: ResultRecord) -> str:
    lines = [f"{rec.command}:"]
    for block in ("inputs", "outputs", "provenance"):
        for k, v in flatten(getattr(rec, block)).items():
            lines.append(f"  {k} = {_human(v)}")
    return "\n".join(lines)


class JsonlCache:
    """Append-only JSON-lines store keyed by ``ResultRecord.key()``.

    Writes go through one lock so concurrent producers never interleave lines.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path or default_cache_path()
        self._lock = threading.Lock()
        self._records: dict = {}
        if os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = ResultRecord.from_json(line)
                    except (ValueError, KeyError):
                        continue  # a torn final line after a crash
                    self._records[rec.key()] = rec

    def __contains__(self, key) -> bool:
        return key in self._records

    def get(self, key) -> Optional[ResultRecord]:
        return self._records.get(key)

    def append(self, rec: ResultRecord) -> None:
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(rec.to_json() + "\n")
            self._records[rec.key()] = rec

    def __len__(self) -> int:
        return len(self._records)
