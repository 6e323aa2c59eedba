"""Per-tick population records and their export formats."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

__all__ = ["PopulationRecord", "TimeSeries", "render_svg"]


@dataclass(frozen=True)
class PopulationRecord:
    """Population level of every component at one tick (one month).

    Biotic components report live agents (or covered square meters for
    area-density populations); abiotic components report pool kilograms.
    """

    tick: int
    counts: dict[str, float]


@dataclass
class TimeSeries:
    """The full output of one run, in model declaration order."""

    component_ids: list[str]
    component_names: list[str]
    records: list[PopulationRecord] = field(default_factory=list)

    def values(self, component_id: str) -> list[float]:
        return [r.counts[component_id] for r in self.records]

    def to_csv(self) -> str:
        """Tabular export: Month column plus one integer column per component."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["Month", *self.component_names])
        for record in self.records:
            writer.writerow(
                [record.tick, *(int(round(record.counts[cid])) for cid in self.component_ids)]
            )
        return buffer.getvalue()


_SVG_COLORS = ("#2e7d32", "#1565c0", "#ef6c00", "#6a1b9a", "#c62828", "#00838f")


def render_svg(series: TimeSeries, width: int = 720, height: int = 420) -> str:
    """Static line chart of a time series (months vs population levels)."""
    pad_left, pad_right, pad_top, pad_bottom = 56, 16, 18, 34
    plot_w = width - pad_left - pad_right
    plot_h = height - pad_top - pad_bottom
    ticks = [r.tick for r in series.records]
    max_tick = max(ticks, default=1) or 1
    max_value = max(
        (v for cid in series.component_ids for v in series.values(cid)), default=1.0
    )
    max_value = max(max_value, 1.0)

    def sx(t: float) -> float:
        return pad_left + plot_w * t / max_tick

    def sy(v: float) -> float:
        return pad_top + plot_h * (1.0 - v / max_value)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad_left}" y1="{pad_top + plot_h}" x2="{pad_left + plot_w}" '
        f'y2="{pad_top + plot_h}" stroke="#444"/>',
        f'<line x1="{pad_left}" y1="{pad_top}" x2="{pad_left}" y2="{pad_top + plot_h}" stroke="#444"/>',
        f'<text x="{pad_left + plot_w / 2:.1f}" y="{height - 8}" text-anchor="middle">Month</text>',
        f'<text x="14" y="{pad_top + plot_h / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {pad_top + plot_h / 2:.1f})">Population</text>',
        f'<text x="{pad_left - 6}" y="{pad_top + plot_h + 4}" text-anchor="end">0</text>',
        f'<text x="{pad_left - 6}" y="{pad_top + 4}" text-anchor="end">{int(max_value)}</text>',
        f'<text x="{pad_left + plot_w}" y="{pad_top + plot_h + 14}" text-anchor="end">{max_tick}</text>',
    ]
    for i, cid in enumerate(series.component_ids):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        points = " ".join(
            f"{sx(r.tick):.2f},{sy(r.counts[cid]):.2f}" for r in series.records
        )
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>')
        label_y = pad_top + 12 + 14 * i
        parts.append(
            f'<rect x="{pad_left + plot_w - 130}" y="{label_y - 9}" width="10" height="10" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{pad_left + plot_w - 116}" y="{label_y}">{series.component_names[i]}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
