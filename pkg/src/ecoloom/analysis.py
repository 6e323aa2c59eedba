"""Shape checks for characteristic population dynamics.

These helpers classify a population time series against the archetype
behaviors the exemplars demonstrate: cyclic predator-prey oscillation,
logistic saturation, unbounded growth to the agent ceiling, and
competitive exclusion.
"""

from __future__ import annotations

__all__ = [
    "turning_points",
    "count_cycle_peaks",
    "is_cyclic",
    "is_logistic",
    "is_capped_growth",
    "exclusion_tick",
]


def turning_points(values: list[float]) -> list[tuple[int, float, str]]:
    """Alternating local extrema of a series, as (index, value, "max"/"min").

    Plateaus collapse to their first point. Endpoints are included so
    every maximum has a minimum on both sides.
    """
    compact: list[tuple[int, float]] = []
    for i, v in enumerate(values):
        if not compact or compact[-1][1] != v:
            compact.append((i, v))
    if len(compact) < 2:
        return []
    out: list[tuple[int, float, str]] = []
    first_rising = compact[1][1] > compact[0][1]
    out.append((compact[0][0], compact[0][1], "min" if first_rising else "max"))
    for k in range(1, len(compact) - 1):
        prev_v, v, next_v = compact[k - 1][1], compact[k][1], compact[k + 1][1]
        if prev_v < v > next_v:
            out.append((compact[k][0], v, "max"))
        elif prev_v > v < next_v:
            out.append((compact[k][0], v, "min"))
    last_falling = compact[-1][1] < compact[-2][1]
    out.append((compact[-1][0], compact[-1][1], "min" if last_falling else "max"))
    return out


def count_cycle_peaks(values: list[float], ratio: float = 1.2) -> int:
    """Interior local maxima that rise at least ``ratio`` above the lowest
    point on both sides (measured to the neighboring maxima or series ends).
    """
    points = turning_points(values)
    maxima = [i for i, (_, _, kind) in enumerate(points) if kind == "max"]
    count = 0
    for pos in maxima:
        idx, peak, _ = points[pos]
        if idx == 0 or idx == len(values) - 1:
            continue  # boundary, not a true interior peak
        left = min((v for _, v, _ in points[:pos]), default=peak)
        right = min((v for _, v, _ in points[pos + 1 :]), default=peak)
        if peak >= ratio * left and peak >= ratio * right:
            count += 1
    return count


def is_cyclic(values: list[float], ratio: float = 1.2, min_peaks: int = 2) -> bool:
    """Predator-prey signature: repeated rises and crashes."""
    return count_cycle_peaks(values, ratio) >= min_peaks


def is_logistic(
    values: list[float],
    growth_factor: float = 2.0,
    tail_tolerance: float = 0.10,
) -> bool:
    """Logistic signature: early growth, then a settled plateau.

    Requires the population a quarter of the way in to be at least
    ``growth_factor`` times the starting value, and the final-quarter
    mean to sit within ``tail_tolerance`` of the last value.
    """
    if len(values) < 8 or values[0] <= 0:
        return False
    quarter = len(values) // 4
    if values[quarter] < growth_factor * values[0]:
        return False
    tail = values[3 * len(values) // 4 :]
    last = values[-1]
    if last <= 0:
        return False
    mean = sum(tail) / len(tail)
    return abs(mean - last) <= tail_tolerance * last


def is_capped_growth(values: list[float], cap: float) -> bool:
    """Unbounded-growth signature: never decreasing before the ceiling is
    reached, and never above the ceiling at any point."""
    if any(v > cap for v in values):
        return False
    try:
        cap_at = next(i for i, v in enumerate(values) if v >= cap)
    except StopIteration:
        cap_at = len(values)
    head = values[: cap_at + 1]
    return all(a <= b for a, b in zip(head, head[1:]))


def exclusion_tick(values: list[float], floor: float = 0.0) -> int | None:
    """First index at which a competitor falls to its floor, if any."""
    for i, v in enumerate(values):
        if v <= floor:
            return i
    return None
