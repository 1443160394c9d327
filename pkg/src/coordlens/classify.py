"""Choropleth classification: equal interval, quantile, and Jenks breaks.

A classification of k classes is the ascending list of k+1 boundaries with
``breaks[0] == min(data)`` and ``breaks[k] == max(data)``.  Class i covers
the half-open span [breaks[i], breaks[i+1]); the data maximum belongs to
the last class.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotEnoughDistinct

METHODS = ("equal_interval", "quantile", "jenks")


@dataclass(frozen=True)
class ClassBreaks:
    method: str
    k: int
    breaks: tuple

    def __post_init__(self):
        assert len(self.breaks) == self.k + 1


def classify(values, method: str, k: int) -> ClassBreaks:
    """Compute k-class breaks over finite values by the requested method."""
    if method not in METHODS:
        raise ValueError(f"unknown classification method: {method!r}")
    if k < 2:
        raise ValueError("class count k must be >= 2")
    data = np.asarray(list(values), dtype=np.float64)
    data = data[np.isfinite(data)]
    if data.size == 0:
        raise NotEnoughDistinct("no finite values to classify")
    data = np.sort(data)

    if method == "equal_interval":
        lo, hi = float(data[0]), float(data[-1])
        breaks = [lo + (hi - lo) * i / k for i in range(k + 1)]
        breaks[0], breaks[k] = lo, hi
        return ClassBreaks(method, k, tuple(breaks))

    distinct = np.unique(data)
    if distinct.size < k:
        raise NotEnoughDistinct(f"{distinct.size} distinct values < {k} classes")

    if method == "quantile":
        # Linear interpolation at rank (n-1) * p, the same rule the boxplot uses.
        from .stats import quantile_linear

        breaks = [quantile_linear(data, i / k) for i in range(k + 1)]
        breaks[0], breaks[k] = float(data[0]), float(data[-1])
        return ClassBreaks(method, k, tuple(breaks))

    return ClassBreaks(method, k, _jenks_breaks(data, k))


def _jenks_breaks(data, k):
    """Fisher-Jenks dynamic program over sorted data.

    Minimizes the total within-class sum of squared deviations; on cost
    ties the smaller split index wins, keeping output deterministic.
    """
    n = data.size
    s1 = np.concatenate(([0.0], np.cumsum(data)))
    s2 = np.concatenate(([0.0], np.cumsum(data * data)))

    def ssd(a, b):
        # values data[a:b]
        cnt = b - a
        total = s1[b] - s1[a]
        return (s2[b] - s2[a]) - total * total / cnt

    # best[j][i]: minimal cost splitting data[:i] into j classes; split[j][i]: start of last class
    best = np.full((k + 1, n + 1), math.inf)
    split = np.zeros((k + 1, n + 1), dtype=np.int64)
    for i in range(1, n + 1):
        best[1][i] = ssd(0, i)
    for j in range(2, k + 1):
        for i in range(j, n + 1):
            cheapest = math.inf
            arg = j - 1
            for m in range(j - 1, i):
                c = best[j - 1][m] + ssd(m, i)
                if c < cheapest:
                    cheapest = c
                    arg = m
            best[j][i] = cheapest
            split[j][i] = arg

    starts = []
    i = n
    for j in range(k, 1, -1):
        m = int(split[j][i])
        starts.append(m)
        i = m
    starts.reverse()

    breaks = [float(data[0])]
    breaks.extend(float(data[m]) for m in starts)
    breaks.append(float(data[-1]))
    return tuple(breaks)


OUT_OF_RANGE = None  # rendered as no-data


def assign_class(value, breaks: ClassBreaks):
    """Class index for a value, or ``None`` when outside [min, max].

    Uses the half-open rule breaks[i] <= value < breaks[i+1]; the maximum
    maps into the last class.  Coincident breaks (duplicated data values)
    resolve to the last class whose lower bound matches.
    """
    bounds = breaks.breaks
    if value is None or not math.isfinite(value):
        return OUT_OF_RANGE
    if value < bounds[0] or value > bounds[-1]:
        return OUT_OF_RANGE
    if value == bounds[-1]:
        return breaks.k - 1
    return min(bisect.bisect_right(bounds, value) - 1, breaks.k - 1)
