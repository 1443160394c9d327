"""Statistical kernels behind the chart types.

Everything here is a pure function over plain sequences; the session layer
feeds these with the record subsets the coordinated-view semantics call
for.  Quantiles use linear interpolation at rank (n-1)*p throughout, and
boxplot fences are Tukey's 1.5 * IQR.
"""

from __future__ import annotations

import datetime
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateX, EmptyInput, InvalidDate, KindMismatch, LengthMismatch, TooFewPoints


@dataclass(frozen=True)
class HistogramSpec:
    origin: float
    bin_width: float
    domain: tuple | None = None  # [lo, hi); default [min, max + bin_width)

    def __post_init__(self):
        if self.bin_width <= 0:
            raise ValueError("bin_width must be > 0")


def histogram(values, spec: HistogramSpec):
    """Bin values into (bin_lo, count) pairs tiling the domain.

    Returns (bins, dropped) where dropped counts non-finite values and
    values outside the domain.  Empty bins inside the domain appear with
    count 0, so counts plus dropped always add up to the input length.
    """
    vals = np.asarray(list(values), dtype=np.float64)
    finite = vals[np.isfinite(vals)]
    dropped = vals.size - finite.size

    if spec.domain is not None:
        lo, hi = spec.domain
    elif finite.size:
        lo, hi = float(finite.min()), float(finite.max()) + spec.bin_width
    else:
        return [], dropped

    w = spec.bin_width
    in_domain = finite[(finite >= lo) & (finite < hi)]
    dropped += finite.size - in_domain.size

    first = math.floor((lo - spec.origin) / w)
    last = math.ceil((hi - spec.origin) / w) - 1
    if last < first:
        last = first
    idx = np.floor((in_domain - spec.origin) / w).astype(np.int64)
    counts = np.bincount(idx - first, minlength=last - first + 1)
    bins = [(spec.origin + i * w, int(c)) for i, c in zip(range(first, last + 1), counts)]
    return bins, int(dropped)


def quantile_linear(sorted_values, p: float) -> float:
    """Quantile by linear interpolation at rank (n-1)*p on sorted data."""
    n = len(sorted_values)
    if n == 0:
        raise EmptyInput("quantile of an empty sample")
    rank = (n - 1) * p
    lo = math.floor(rank)
    hi = math.ceil(rank)
    frac = rank - lo
    a, b = float(sorted_values[lo]), float(sorted_values[hi])
    return a + (b - a) * frac


@dataclass(frozen=True)
class BoxplotStats:
    min: float  # lower whisker (most extreme value within the lower fence)
    q1: float
    median: float
    q3: float
    max_whisker: float
    outliers: tuple


def boxplot_stats(values) -> BoxplotStats:
    """Five-number summary with Tukey outliers (1.5 * IQR fences)."""
    data = np.sort(np.asarray([v for v in values if v is not None and math.isfinite(v)],
                              dtype=np.float64))
    if data.size == 0:
        raise EmptyInput("boxplot needs at least one finite value")
    q1, med, q3 = (quantile_linear(data, q) for q in (0.25, 0.5, 0.75))
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = data[(data >= lo_fence) & (data <= hi_fence)]
    outliers = data[(data < lo_fence) | (data > hi_fence)]
    return BoxplotStats(
        min=float(inside[0]),
        q1=q1,
        median=med,
        q3=q3,
        max_whisker=float(inside[-1]),
        outliers=tuple(float(v) for v in outliers),
    )


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    r_squared: float
    n: int


def linear_regression(points) -> RegressionFit:
    """Ordinary least squares y = slope*x + intercept over (x, y) pairs.

    r_squared is 1 - SSres/SStot; a constant y (SStot == 0) fits perfectly
    and reports 1.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise TooFewPoints("regression needs at least 2 points")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    xm, ym = x.mean(), y.mean()
    sxx = float(((x - xm) ** 2).sum())
    if sxx == 0.0:
        raise DegenerateX("regression needs non-zero x variance")
    slope = float(((x - xm) * (y - ym)).sum()) / sxx
    intercept = ym - slope * xm
    ss_res = float(((y - (slope * x + intercept)) ** 2).sum())
    ss_tot = float(((y - ym) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return RegressionFit(slope, intercept, r2, len(pts))


def stacked_aggregate(primary, secondary):
    """Counts per (primary, secondary) category pair.

    Returns {primary: {secondary: count}} with deterministic (sorted) key
    order; row sums equal the per-primary totals by construction.
    """
    primary = list(primary)
    secondary = list(secondary)
    if len(primary) != len(secondary):
        raise LengthMismatch(f"{len(primary)} primary vs {len(secondary)} secondary values")
    matrix = {}
    for p, s in zip(primary, secondary):
        matrix.setdefault(p, {}).setdefault(s, 0)
        matrix[p][s] += 1
    return {p: dict(sorted(matrix[p].items())) for p in sorted(matrix)}


GRANULARITIES = ("year", "month", "day")


def time_bucket(dates, granularity: str):
    """Truncate dates to canonical keys: YYYY, YYYY-MM, or YYYY-MM-DD."""
    if granularity not in GRANULARITIES:
        raise ValueError(f"unknown granularity: {granularity!r}")
    keys = []
    for d in dates:
        d = _coerce_date(d)
        if granularity == "year":
            keys.append(f"{d.year:04d}")
        elif granularity == "month":
            keys.append(f"{d.year:04d}-{d.month:02d}")
        else:
            keys.append(d.isoformat())
    return keys


def _coerce_date(d):
    if isinstance(d, datetime.date) and not isinstance(d, datetime.datetime):
        return d
    if isinstance(d, datetime.datetime):
        return d.date()
    if isinstance(d, str):
        try:
            return datetime.date.fromisoformat(d)
        except ValueError as e:
            raise InvalidDate(str(e)) from None
    raise InvalidDate(f"not a calendar date: {d!r}")


def series_aggregate(buckets, categories, values, reduction: str = "mean"):
    """One ordered (bucket, value) series per category.

    ``buckets`` are canonical time-bucket keys aligned with ``categories``
    and ``values``.  Reduction is ``mean`` (numeric values required; None
    skipped) or ``count``.
    """
    buckets = list(buckets)
    categories = list(categories)
    values = list(values) if values is not None else [None] * len(buckets)
    if not (len(buckets) == len(categories) == len(values)):
        raise LengthMismatch("buckets, categories, and values must be parallel")
    if reduction not in ("mean", "count"):
        raise ValueError(f"unknown reduction: {reduction!r}")

    acc = {}
    for b, c, v in zip(buckets, categories, values):
        cell = acc.setdefault(c, {}).setdefault(b, [0, 0.0])
        if reduction == "count":
            cell[0] += 1
        else:
            if v is None:
                continue
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise KindMismatch(f"mean reduction needs numeric values, got {v!r}")
            cell[0] += 1
            cell[1] += float(v)

    out = {}
    for c in sorted(acc):
        series = []
        for b in sorted(acc[c]):
            n, total = acc[c][b]
            if reduction == "count":
                series.append((b, n))
            elif n:
                series.append((b, total / n))
        out[c] = series
    return out
