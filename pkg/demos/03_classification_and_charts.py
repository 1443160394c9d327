"""Choropleth classification and the chart statistics kernels."""

import random

from coordlens import (
    HistogramSpec,
    assign_class,
    boxplot_stats,
    classify,
    histogram,
    linear_regression,
    stacked_aggregate,
    time_bucket,
)

rng = random.Random(7)
rates = sorted(round(rng.betavariate(2, 5) * 100, 1) for _ in range(40))

print("poverty-rate-like sample:", rates[:8], "...", rates[-4:])
for method in ("equal_interval", "quantile", "jenks"):
    breaks = classify(rates, method, k=5)
    legend = [f"[{a:.1f}, {b:.1f})" for a, b in zip(breaks.breaks, breaks.breaks[1:])]
    print(f"{method:>14}: {legend}")

jenks = classify(rates, "jenks", 5)
sample = rates[17]
print(f"\nvalue {sample} falls in class {assign_class(sample, jenks)} of the jenks legend")

# Histogram with an explicit bin width, like the dropdown-driven charts.
bins, dropped = histogram(rates, HistogramSpec(origin=0, bin_width=10))
print("\nhistogram, width 10:")
for lo, count in bins:
    print(f"  [{lo:>3.0f}, {lo + 10:>3.0f}): {'#' * count}")

# Boxplot summary with Tukey outliers.
weights = [rng.gauss(40, 8) for _ in range(60)] + [112.0]
s = boxplot_stats(weights)
print(f"\nboxplot: whiskers [{s.min:.1f}, {s.max_whisker:.1f}], "
      f"quartiles [{s.q1:.1f}, {s.median:.1f}, {s.q3:.1f}], outliers {list(s.outliers)}")

# Scatterplot trendline.
pts = [(x, 3.2 * x - 4 + rng.gauss(0, 5)) for x in range(50)]
fit = linear_regression(pts)
print(f"\nleast squares: y = {fit.slope:.3f}x + {fit.intercept:.3f}, r^2 = {fit.r_squared:.3f}")

# Stacked bars: species broken down by screening result.
species = [rng.choice(["deer mouse", "rice rat"]) for _ in range(30)]
result = [rng.choice(["Positive", "Negative", "Negative"]) for _ in range(30)]
print("\nstacked counts:", stacked_aggregate(species, result))

# Time bucketing at the three slider granularities.
dates = ["2019-12-31", "2020-01-01", "2020-01-15", "2020-03-02"]
for g in ("year", "month", "day"):
    print(f"{g:>6}:", time_bucket(dates, g))
