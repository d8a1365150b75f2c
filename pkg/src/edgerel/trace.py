"""Convert cluster CPU-usage traces into discrete resource distributions.

Input is delimited text with header ``timestamp,machine_id,cpu_usage``
(usage as a fraction of the machine in [0, 1]).  Available capacity at a
sample is ``machine_capacity * (1 - usage)``; each sample maps to the level
``round(available / machine_capacity * K)`` with half-up rounding, and the
pmf is the normalized level frequency table.  Samples are weighted equally.
Raw cluster-trace task-usage dumps reduce to this shape by projecting the
measurement window start, the machine identifier, and the CPU-rate column.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .errors import SchemaViolation
from .model import Pmf

REQUIRED_COLUMNS = ("timestamp", "machine_id", "cpu_usage")


@dataclass(frozen=True)
class TraceRecord:
    timestamp: float
    machine_id: str
    usage: float


@dataclass(frozen=True)
class TraceSeries:
    records: tuple[TraceRecord, ...]

    def __post_init__(self):
        last_seen: dict[str, float] = {}
        for rec in self.records:
            if not 0.0 <= rec.usage <= 1.0:
                raise ValueError(f"usage {rec.usage!r} outside [0, 1] "
                                 f"(machine {rec.machine_id})")
            prev = last_seen.get(rec.machine_id)
            if prev is not None and rec.timestamp < prev:
                raise ValueError(f"timestamps not sorted for machine {rec.machine_id}")
            last_seen[rec.machine_id] = rec.timestamp

    def for_machine(self, machine_id: str) -> tuple[TraceRecord, ...]:
        return tuple(r for r in self.records if r.machine_id == machine_id)


@dataclass(frozen=True)
class DiscretizationPolicy:
    """Binning policy: K+1 levels (0..K), full capacity at usage 0."""

    levels: int = 6
    machine_capacity: float = 6.0

    def __post_init__(self):
        if self.levels < 1:
            raise ValueError("levels must be >= 1")
        if self.machine_capacity <= 0:
            raise ValueError("machine_capacity must be > 0")


def parse_trace(text: str) -> TraceSeries:
    """Parse the delimited trace format into a TraceSeries."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(reader.fieldnames[:3]) != REQUIRED_COLUMNS:
        raise SchemaViolation(
            f"trace header must start with {','.join(REQUIRED_COLUMNS)}")
    records = []
    for row in reader:
        try:
            records.append(TraceRecord(
                timestamp=float(row["timestamp"]),
                machine_id=row["machine_id"].strip(),
                usage=float(row["cpu_usage"]),
            ))
        except (TypeError, ValueError) as exc:
            raise SchemaViolation(f"bad trace row {row!r}: {exc}") from None
    return TraceSeries(tuple(records))


def load_trace(path) -> TraceSeries:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_trace(fh.read())


def machines_in(series: TraceSeries) -> list[str]:
    """Distinct machine ids in first-appearance order."""
    seen: dict[str, None] = {}
    for rec in series.records:
        seen.setdefault(rec.machine_id, None)
    return list(seen)


def _half_up(value: Fraction) -> int:
    return int(value + Fraction(1, 2)) if value >= 0 else -int(-value + Fraction(1, 2))


def ingest_trace(series: TraceSeries, machine: str,
                 policy: DiscretizationPolicy = DiscretizationPolicy()) -> Pmf:
    """Bin one machine's availability into a level pmf.

    Rounding is half-up (0.5 maps to the higher level), evaluated in exact
    arithmetic so bin edges do not wobble with float noise.
    """
    records = series.for_machine(machine)
    if not records:
        raise ValueError(f"no trace records for machine {machine!r}")
    counts: dict[int, int] = {}
    k = policy.levels
    for rec in records:
        level = _half_up(Fraction(1 - Fraction(str(rec.usage))) * k)
        counts[level] = counts.get(level, 0) + 1
    n = len(records)
    entries = tuple((level, count / n) for level, count in sorted(counts.items()))
    return Pmf(entries)
