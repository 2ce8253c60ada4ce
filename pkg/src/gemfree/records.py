"""Run records and their JSON-lines / CSV serialisation."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

SCHEMA_VERSION = 1
RECORD_FIELDS = (
    "schema_version",
    "command",
    "m",
    "parity",
    "bound",
    "max_rho",
    "maximizer_g6",
    "scanned",
    "seed",
    "elapsed_ms",
    "verdict",
)


@dataclass
class RunRecord:
    command: str
    m: int | None
    bound_value: float | None
    achieved_max_rho: float | None
    maximizer_graph6: str
    num_graphs_scanned: int
    seed: int | None
    elapsed_ms: int
    verdict: str  # "bound_holds" | "violation" | "attained" | "not_applicable"
    coverage: str = "exhaustive"
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def parity(self) -> str | None:
        if self.m is None:
            return None
        return "odd" if self.m % 2 else "even"

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "m": self.m,
            "parity": self.parity,
            "bound": self.bound_value,
            "max_rho": self.achieved_max_rho,
            "maximizer_g6": self.maximizer_graph6,
            "scanned": self.num_graphs_scanned,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def verdict_for(max_rho: float, bound: float, tol: float) -> str:
    if max_rho > bound + tol:
        return "violation"
    if abs(max_rho - bound) <= tol:
        return "attained"
    return "bound_holds"


def append_records(path: str | Path, records: Iterable[RunRecord]) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")


def read_records(path: str | Path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def write_csv(fh: IO[str], header: Iterable[str], rows: Iterable[Iterable]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow(list(row))
