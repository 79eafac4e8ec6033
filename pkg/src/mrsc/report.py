"""Rendering of size statistics as text tables, delimited output and charts."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional, Sequence

TIMING_COLUMNS = ("build_ms", "query_ms")
COLUMNS = (
    "example",
    "first",
    "last",
    "min",
    "max",
    "min_skip_unfold",
    "max_skip_unfold",
    "count",
    *TIMING_COLUMNS,
)


@dataclass(frozen=True)
class StatsRow:
    example: str
    first: Optional[int]
    last: Optional[int]
    min: Optional[int]
    max: Optional[int]
    min_skip_unfold: Optional[int]
    max_skip_unfold: Optional[int]
    count: int
    build_ms: float
    query_ms: float

    def cells(self, include_timings: bool) -> list[str]:
        values = [
            self.example,
            self.first,
            self.last,
            self.min,
            self.max,
            self.min_skip_unfold,
            self.max_skip_unfold,
            self.count,
        ]
        if include_timings:
            values += [f"{self.build_ms:.1f}", f"{self.query_ms:.1f}"]
        return ["-" if v is None else str(v) for v in values]


def _header(include_timings: bool) -> list[str]:
    if include_timings:
        return list(COLUMNS)
    return [c for c in COLUMNS if c not in TIMING_COLUMNS]


def render_csv(rows: Sequence[StatsRow], include_timings: bool = True) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_header(include_timings))
    for row in rows:
        writer.writerow(row.cells(include_timings))
    return out.getvalue()


def render_text(rows: Sequence[StatsRow], include_timings: bool = True) -> str:
    table = [_header(include_timings)] + [row.cells(include_timings) for row in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(table[0]))]
    lines = []
    for line in table:
        padded = [cell.ljust(w) for cell, w in zip(line, widths)]
        lines.append("  ".join(padded).rstrip())
    return "\n".join(lines) + "\n"


def plot_stats(rows: Sequence[StatsRow], path: str) -> None:
    """Render the size statistics as a grouped bar chart saved to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series = ("first", "last", "min", "max", "min_skip_unfold", "max_skip_unfold")
    examples = [row.example for row in rows]
    fig, ax = plt.subplots(figsize=(1.8 + 1.6 * len(rows), 4.5))
    width = 0.8 / len(series)
    for i, key in enumerate(series):
        values = [getattr(row, key) or 0 for row in rows]
        positions = [j + (i - (len(series) - 1) / 2) * width for j in range(len(rows))]
        ax.bar(positions, values, width, label=key)
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(examples)
    ax.set_yscale("log")
    ax.set_ylabel("graph size")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
