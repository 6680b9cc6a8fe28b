"""Result persistence: CSV tables and JSON documents with an embedded run record."""

from __future__ import annotations

import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from importlib import metadata
from pathlib import Path

CSV_COLUMNS = ["graph6", "n", "edges", "p", "value", "value_as_fraction", "mode", "extremizer",
               "regions_feasible", "time_ms"]


def artifact_version() -> str:
    try:
        return metadata.version("varmax")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class RunRecord:
    command: str
    argv: list[str]
    seed: int | None = None
    version: str = field(default_factory=artifact_version)
    started: str = field(default_factory=_now)
    finished: str = ""
    outputs: list[str] = field(default_factory=list)

    @classmethod
    def start(cls, command: str, argv=None, seed=None) -> "RunRecord":
        return cls(command, list(sys.argv[1:] if argv is None else argv), seed)

    def finish(self):
        self.finished = _now()
        return self


def atomic_write(path: str | Path, text: str):
    """Write through a temp file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_csv(rows: list[dict], record: RunRecord | None = None, columns=CSV_COLUMNS) -> str:
    buf = io.StringIO()
    if record is not None:
        buf.write("# run: " + json.dumps(asdict(record), sort_keys=True) + "\n")
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def read_csv(path: str | Path) -> tuple[dict | None, list[dict]]:
    lines = Path(path).read_text().splitlines()
    record = None
    if lines and lines[0].startswith("# run: "):
        record = json.loads(lines[0][len("# run: "):])
        lines = lines[1:]
    return record, list(csv.DictReader(lines))


def render_json(payload: dict, record: RunRecord | None = None) -> str:
    doc = {"run": asdict(record) if record else None, **payload}
    return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"


def write_csv(path, rows, record=None, columns=CSV_COLUMNS):
    if record is not None:
        record.outputs.append(str(path))
        record.finish()
    atomic_write(path, render_csv(rows, record, columns))


def write_json(path, payload, record=None):
    if record is not None:
        record.outputs.append(str(path))
        record.finish()
    atomic_write(path, render_json(payload, record))
