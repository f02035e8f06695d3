"""Result documents and their JSON/CSV serialization.

Floats are written with 10 significant digits and keys in a fixed order, so
an identical document always produces identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any

FLOAT_DIGITS = 10

CSV_COLUMNS = [
    "graph_name", "algorithm", "p", "T_tot", "T_eq", "L_pop", "seed", "restarts",
    "n", "m", "vol", "best_anti", "best_anti_exact", "best_max", "cut_size",
    "rounds", "steps", "wall_time", "partition",
]


def fmt_float(x: float) -> float:
    """Round to 10 significant digits for emission."""
    return float(f"{x:.{FLOAT_DIGITS}g}")


@dataclass
class ResultDocument:
    graph_name: str
    algorithm: str
    config: dict[str, Any]
    n: int
    m: int
    vol: float
    best_anti: float
    best_anti_exact: str | None
    best_max: float
    cut_size: float
    partition: list[int]
    rounds: int | None = None
    steps: int | None = None
    wall_time: float | None = None
    trace: Any = None
    extra: dict[str, Any] = field(default_factory=dict)


def _clean(obj):
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _check(doc: ResultDocument) -> None:
    if not doc.partition:
        raise ValueError("refusing to emit a result with an empty partition")


def to_json(doc: ResultDocument) -> str:
    _check(doc)
    body = asdict(doc)
    body["partition"] = sorted(int(i) for i in doc.partition)
    if not body["extra"]:
        del body["extra"]
    if body["wall_time"] is None:
        del body["wall_time"]
    return json.dumps(_clean(body), indent=2) + "\n"


def to_csv(doc: ResultDocument) -> str:
    _check(doc)
    row = {
        "graph_name": doc.graph_name,
        "algorithm": doc.algorithm,
        **{k: doc.config.get(k) for k in ("p", "T_tot", "T_eq", "L_pop", "seed", "restarts")},
        "n": doc.n,
        "m": doc.m,
        "vol": doc.vol,
        "best_anti": doc.best_anti,
        "best_anti_exact": doc.best_anti_exact,
        "best_max": doc.best_max,
        "cut_size": doc.cut_size,
        "rounds": doc.rounds,
        "steps": doc.steps,
        "wall_time": doc.wall_time,
        "partition": ";".join(str(i) for i in sorted(int(i) for i in doc.partition)),
    }
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerow({k: ("" if v is None else _clean(v)) for k, v in row.items()})
    return buf.getvalue()


def write_result(doc: ResultDocument, fmt: str = "json") -> bytes:
    if fmt == "json":
        return to_json(doc).encode("ascii")
    if fmt == "csv":
        return to_csv(doc).encode("ascii")
    raise ValueError(f"format must be 'json' or 'csv', got {fmt!r}")


_CSV_INT = {"T_tot", "T_eq", "L_pop", "seed", "restarts", "n", "m", "rounds", "steps"}
_CSV_FLOAT = {"vol", "best_anti", "best_max", "cut_size", "wall_time"}


def read_csv(text: str) -> list[dict[str, Any]]:
    """Parse emitted CSV back into typed rows."""
    rows = []
    for raw in csv.DictReader(io.StringIO(text)):
        row: dict[str, Any] = {}
        for k, v in raw.items():
            if v == "":
                row[k] = None
            elif k in _CSV_INT:
                row[k] = int(v)
            elif k in _CSV_FLOAT:
                row[k] = float(v)
            elif k == "partition":
                row[k] = [int(i) for i in v.split(";")]
            else:
                row[k] = v
        rows.append(row)
    return rows
