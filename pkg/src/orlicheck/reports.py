"""Structured outcomes of inequality checks, with lossless JSON round-trips.

Checkers report worst-case margins instead of asserting, so deliberately
failing inputs (negative controls) are first-class citizens of the test
matrix.  Pass flags are always recomputable from the stored quantities.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable

import numpy as np


def _plain(obj: Any) -> Any:
    """Recursively convert numpy scalars/arrays to JSON-safe Python values."""
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, float) and not np.isfinite(obj):
        return repr(obj)
    return obj


@dataclass
class ConditionReport:
    """Worst-case margin of a pointwise condition over a tested grid.

    ``margin`` is min over the grid of (RHS - LHS), or (bound - ratio) for
    ratio-type conditions; the condition holds iff margin >= -tolerance.
    The witness is the tested point attaining the worst margin.
    """

    condition_id: str
    margin: float
    witness: Any
    passed: bool
    grid_size: int
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return _plain(asdict(self))


@dataclass
class VerificationReport:
    """Outcome of one inequality check: inputs echo, computed sides, margin."""

    check_id: str
    inputs: dict
    quantities: dict
    margin: float | None
    passed: bool
    tolerance: str
    wall_time_s: float | None = None

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "check_id": self.check_id,
            "inputs": _plain(self.inputs),
            "quantities": _plain(self.quantities),
            "margin": _plain(self.margin),
            "passed": bool(self.passed),
            "tolerance": self.tolerance,
        }
        if include_timing and self.wall_time_s is not None:
            d["wall_time_s"] = self.wall_time_s
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            check_id=d["check_id"],
            inputs=d.get("inputs", {}),
            quantities=d.get("quantities", {}),
            margin=d.get("margin"),
            passed=d["passed"],
            tolerance=d.get("tolerance", ""),
            wall_time_s=d.get("wall_time_s"),
        )


def dump_json(obj: Any, path: str | Path, *, meta: dict | None = None) -> None:
    """Write deterministic JSON; volatile metadata goes to a sidecar file.

    The main file's bytes depend only on ``obj`` (sorted keys, fixed
    separators), so identical runs produce identical files.  Timestamps and
    wall times belong in ``meta`` and land in ``<path>.meta.json``.
    """
    path = Path(path)
    text = json.dumps(_plain(obj), sort_keys=True, indent=2)
    path.write_text(text + "\n")
    if meta is not None:
        side = path.with_suffix(path.suffix + ".meta.json")
        side.write_text(json.dumps(_plain(meta), sort_keys=True, indent=2) + "\n")


def dump_csv(rows: Iterable[dict], path: str | Path) -> None:
    """Write rows as CSV (comma separated, '.' decimal, header from keys)."""
    rows = list(rows)
    path = Path(path)
    if not rows:
        path.write_text("")
        return
    fields = list(rows[0].keys())
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _format_cell(row.get(k)) for k in fields})


def _format_cell(v: Any) -> Any:
    if isinstance(v, (np.floating,)):
        v = float(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def load_json(path: str | Path) -> Any:
    return json.loads(Path(path).read_text())


def reports_equal(path_a: str | Path, path_b: str | Path) -> bool:
    """Compare two report files ignoring sidecar metadata."""
    return Path(path_a).read_bytes() == Path(path_b).read_bytes()
