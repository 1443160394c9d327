/**
 * Chart renderers. Each takes the engine payload plus its view spec and
 * returns the view's HTML; no chart computes statistics of its own.
 */

import { esc, fmt, h } from "../dom.js";
import { paletteFor, type AppBundle, type ViewSpec } from "../bundle.js";
import type { Payload } from "../protocol.js";

const SCROLL_THRESHOLD = 8; // legends/axes beyond this get a scroll region

function resetLink(viewId: string): string {
  return h("a", { href: "#", class: "reset", "data-reset": viewId }, "reset");
}

function filterBadge(payload: Payload): string {
  if (!payload.filter) return "";
  return h("span", { class: "filter-badge" }, esc(JSON.stringify(payload.filter)));
}

/** Donut, row, bar, and select-menu views all draw identity-group bins. */
export function renderBins(payload: Payload, view: ViewSpec, bundle: AppBundle): string {
  const bins: [string, number][] = payload.bins ?? [];
  const colors = paletteFor(bundle, view, bins.length);
  const max = Math.max(1, ...bins.map(([, v]) => v));
  const rows = bins.map(([label, value], i) =>
    h("li", { class: "bin", "data-value": label }, [
      h("span", { class: "swatch", style: `background:${colors[i]}` }),
      h("span", { class: "label" }, esc(label)),
      h("span", { class: "bar", style: `width:${((value / max) * 100).toFixed(1)}%` }),
      h("span", { class: "count" }, fmt(value)),
    ]),
  );
  const scroll = bins.length > SCROLL_THRESHOLD ? " scrollable" : "";
  return h("div", { class: `chart ${view.kind}` }, [
    h("header", {}, [esc(titleOf(view)), resetLink(view.id), filterBadge(payload)]),
    h("ul", { class: `bins${scroll}` }, rows),
  ]);
}

export function renderHistogram(payload: Payload, view: ViewSpec): string {
  const bins: [number, number][] = payload.bins ?? [];
  const max = Math.max(1, ...bins.map(([, v]) => v));
  const bars = bins.map(([lo, value]) =>
    h("div", {
      class: "hbar",
      "data-lo": lo,
      style: `height:${((value / max) * 100).toFixed(1)}%`,
      title: `[${fmt(lo)}, ${fmt(lo + payload.width)}): ${fmt(value)}`,
    }),
  );
  const widths: number[] = view.options.bin_widths ?? [];
  const dropdown = widths.length
    ? h("select", { class: "bin-width", "data-view": view.id },
        widths.map((w) => h("option", { value: w, selected: w === payload.width ? "selected" : undefined }, fmt(w))))
    : "";
  return h("div", { class: "chart histogram" }, [
    h("header", {}, [esc(titleOf(view)), dropdown, resetLink(view.id), filterBadge(payload)]),
    h("div", { class: "hbars", "data-brush": view.id }, bars),
  ]);
}

export function renderDateSlider(payload: Payload, view: ViewSpec): string {
  const domain = payload.domain ?? ["", ""];
  const buckets: [string, number][] = payload.buckets ?? [];
  const max = Math.max(1, ...buckets.map(([, v]) => v));
  const bars = buckets.map(([key, value]) =>
    h("div", { class: "hbar", "data-bucket": key, style: `height:${((value / max) * 100).toFixed(1)}%` }),
  );
  return h("div", { class: "chart date-slider" }, [
    h("header", {}, [esc(titleOf(view)), resetLink(view.id), filterBadge(payload)]),
    h("div", { class: "hbars", "data-brush": view.id }, bars),
    h("div", { class: "domain" }, `${esc(domain[0])} .. ${esc(domain[1])}`),
  ]);
}

export function renderRangeSlider(payload: Payload, view: ViewSpec): string {
  const domain = payload.domain ?? [0, 1];
  return h("div", { class: "chart range-slider" }, [
    h("header", {}, [esc(titleOf(view)), resetLink(view.id), filterBadge(payload)]),
    h("input", { type: "range", min: domain[0], max: domain[1], "data-view": view.id }),
  ]);
}

export function renderStacked(payload: Payload, view: ViewSpec, bundle: AppBundle): string {
  const matrix: Record<string, Record<string, number>> = payload.matrix ?? {};
  const secondaries = [...new Set(Object.values(matrix).flatMap((m) => Object.keys(m)))].sort();
  const colors = paletteFor(bundle, view, secondaries.length);
  const totalMax = Math.max(1, ...Object.values(matrix).map((m) =>
    Object.values(m).reduce((a, b) => a + b, 0)));
  const bars = Object.keys(matrix).sort().map((primary) => {
    const cells = secondaries.filter((s) => matrix[primary][s]).map((s, i) =>
      h("span", {
        class: "stack",
        "data-primary": primary,
        "data-secondary": s,
        style: `width:${((matrix[primary][s] / totalMax) * 100).toFixed(1)}%;` +
          `background:${colors[secondaries.indexOf(s)]}`,
        title: `${primary} / ${s}: ${matrix[primary][s]}`,
      }),
    );
    return h("li", {}, [h("span", { class: "label" }, esc(primary)), ...cells]);
  });
  const legend = secondaries.map((s, i) =>
    h("span", { class: "legend-entry" }, [
      h("span", { class: "swatch", style: `background:${colors[i]}` }), esc(s)]));
  return h("div", { class: "chart stacked-bar" }, [
    h("header", {}, [esc(titleOf(view)), resetLink(view.id), filterBadge(payload)]),
    h("ul", { class: "stacks" }, bars),
    h("div", { class: "legend" }, legend),
  ]);
}

export function renderScatter(payload: Payload, view: ViewSpec): string {
  const pts: [string, number, number][] = payload.points ?? [];
  const selected = new Set<string>(payload.selected ?? []);
  const xs = pts.map((p) => p[1]);
  const ys = pts.map((p) => p[2]);
  const x0 = Math.min(...xs, 0);
  const x1 = Math.max(...xs, 1);
  const y0 = Math.min(...ys, 0);
  const y1 = Math.max(...ys, 1);
  const sx = (x: number) => (((x - x0) / (x1 - x0 || 1)) * 100).toFixed(2);
  const sy = (y: number) => (100 - ((y - y0) / (y1 - y0 || 1)) * 100).toFixed(2);
  const dots = pts.map(([key, x, y]) =>
    h("circle", {
      cx: sx(x), cy: sy(y), r: 1.2,
      class: selected.size === 0 || selected.has(key) ? "dot" : "dot dim",
      "data-key": key,
    }),
  );
  let trend = "";
  if (payload.fit) {
    const { slope, intercept, r_squared } = payload.fit;
    trend = h("line", {
      x1: sx(x0), y1: sy(slope * x0 + intercept),
      x2: sx(x1), y2: sy(slope * x1 + intercept),
      class: "trend", "data-r2": r_squared.toFixed(4),
    });
  }
  return h("div", { class: "chart scatter" }, [
    h("header", {}, [esc(titleOf(view)),
      axisDropdown(view, "x", payload.x), axisDropdown(view, "y", payload.y),
      resetLink(view.id)]),
    h("svg", { viewBox: "0 0 100 100", "data-brush": view.id }, [...dots, trend]),
    payload.fit
      ? h("div", { class: "fit" },
          `y = ${fmt(payload.fit.slope)}x + ${fmt(payload.fit.intercept)} (r2 ${fmt(payload.fit.r_squared)})`)
      : "",
  ]);
}

function axisDropdown(view: ViewSpec, axis: "x" | "y", current: string): string {
  const choices: string[] = view.options[`${axis}_choices`] ?? [];
  if (!choices.length) return "";
  return h("select", { class: `axis-${axis}`, "data-view": view.id, "data-axis": axis },
    choices.map((c) => h("option", { value: c, selected: c === current ? "selected" : undefined }, esc(c))));
}

export function renderBoxplot(payload: Payload, view: ViewSpec): string {
  const groups: any[] = payload.groups ?? [];
  const blocks = groups.map((g) => {
    const outliers = (g.outliers as [string, number][]).map(([key, value]) =>
      h("span", { class: "outlier", "data-key": key, title: fmt(value) }, "o"));
    return h("li", {}, [
      h("span", { class: "label" }, esc(g.category ?? "all")),
      h("span", { class: "whiskers" },
        `${fmt(g.min)} [${fmt(g.q1)} | ${fmt(g.median)} | ${fmt(g.q3)}] ${fmt(g.max_whisker)}`),
      ...outliers,
    ]);
  });
  return h("div", { class: "chart boxplot" }, [
    h("header", {}, [esc(titleOf(view)), resetLink(view.id)]),
    h("ul", { class: "boxes" }, blocks),
  ]);
}

export function renderSeries(payload: Payload, view: ViewSpec, bundle: AppBundle): string {
  const series: Record<string, [string, number][]> = payload.series ?? {};
  const names = Object.keys(series).sort();
  const colors = paletteFor(bundle, view, names.length);
  const lines = names.map((name, i) => {
    const pts = series[name].map(([bucket, value]) => `${esc(bucket)}:${fmt(value)}`).join(" ");
    return h("li", { style: `color:${colors[i]}`, "data-series": name }, `${esc(name)}: ${pts}`);
  });
  return h("div", { class: "chart series" }, [
    h("header", {}, [esc(titleOf(view)), resetLink(view.id), filterBadge(payload)]),
    h("ul", {}, lines),
  ]);
}

export function titleOf(view: ViewSpec): string {
  return (view.options.title as string) ?? view.id;
}
