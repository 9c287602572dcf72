"""Per-iteration solver records."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

TRACE_COLUMNS = ("iter", "lambda", "energy", "predicted", "actual", "accepted", "wall_ms")


@dataclass
class TraceRecord:
    iter: int
    lam: float
    energy: float
    predicted: float
    actual: float
    accepted: bool
    wall_ms: float

    def row(self) -> list[str]:
        return [str(self.iter), repr(float(self.lam)), repr(float(self.energy)),
                repr(float(self.predicted)), repr(float(self.actual)),
                str(int(self.accepted)), f"{self.wall_ms:.3f}"]


@dataclass
class SolverTrace:
    """Iteration log plus the final answer of one solve.

    ``energy`` in a record is the energy of the current labeling at the
    start of that iteration; ``labeling``/``energy`` on the trace are the
    returned solution.
    """

    method: str
    records: list[TraceRecord] = field(default_factory=list)
    labeling: np.ndarray | None = None
    energy: float = float("nan")
    termination: str = ""
    initial_energy: float = float("nan")
    extras: dict = field(default_factory=dict)

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def wall_ms(self) -> float:
        return float(sum(r.wall_ms for r in self.records))

    def column(self, name: str) -> np.ndarray:
        attr = "lam" if name == "lambda" else name
        return np.array([getattr(r, attr) for r in self.records])

    def accepted_energies(self) -> list[float]:
        """Energy after each accepted move, preceded by the initial energy."""
        after = [r.energy for r in self.records[1:]] + [self.energy]
        return [self.initial_energy] + [
            e for r, e in zip(self.records, after) if r.accepted]

    def to_csv(self, include_time: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = TRACE_COLUMNS if include_time else TRACE_COLUMNS[:-1]
        w.writerow(cols)
        for r in self.records:
            w.writerow(r.row()[: len(cols)])
        return buf.getvalue()
