/**
 * The view registry: every ViewSpec in the bundle gets exactly one
 * renderer, and the bundle layout decides the slot order on the page.
 */

import type { AppBundle, ViewSpec } from "./bundle.js";
import type { Payload } from "./protocol.js";
import {
  renderBins,
  renderBoxplot,
  renderDateSlider,
  renderHistogram,
  renderRangeSlider,
  renderScatter,
  renderSeries,
  renderStacked,
} from "./render/charts.js";
import {
  renderChoropleth,
  renderHeatmap,
  renderMarkers,
  renderPropSymbol,
  renderSmallMultiples,
} from "./render/maps.js";
import { renderTable } from "./render/table.js";

export type Renderer = (payload: Payload, state: RenderContext) => string;

export interface RenderContext {
  bundle: AppBundle;
  view: ViewSpec;
  selectedKey: string | null;
}

const MAP_KINDS = new Set([
  "marker_map", "choropleth_map", "prop_symbol_map", "small_multiples", "heatmap_layer",
]);

export function rendererFor(view: ViewSpec): Renderer | null {
  switch (view.kind) {
    case "histogram":
      return (p, c) => renderHistogram(p, c.view);
    case "date_slider":
      return (p, c) => renderDateSlider(p, c.view);
    case "range_slider":
      return (p, c) => renderRangeSlider(p, c.view);
    case "donut":
    case "row_chart":
    case "bar_chart":
    case "select_menu":
      return (p, c) => renderBins(p, c.view, c.bundle);
    case "stacked_bar":
      return (p, c) => renderStacked(p, c.view, c.bundle);
    case "scatter":
      return (p, c) => renderScatter(p, c.view);
    case "boxplot":
      return (p, c) => renderBoxplot(p, c.view);
    case "series_chart":
      return (p, c) => renderSeries(p, c.view, c.bundle);
    case "choropleth_map":
      return (p, c) => renderChoropleth(p, c.view, c.bundle);
    case "small_multiples":
      return (p, c) => renderSmallMultiples(p, c.view, c.bundle);
    case "prop_symbol_map":
      return (p, c) => renderPropSymbol(p, c.view, c.bundle);
    case "marker_map":
      return (p, c) => renderMarkers(p, c.view);
    case "heatmap_layer":
      return (p, c) => renderHeatmap(p, c.view);
    case "data_table":
      return (p, c) => renderTable(p, c.view, c.selectedKey);
    case "status_bar":
      return null; // fed by status notifications, not view payloads
    default:
      return null;
  }
}

export interface ViewRegistry {
  renderers: Map<string, Renderer>;
  /** view ids grouped into page sections per the bundle layout */
  slots: { section: string; views: string[] }[];
}

export function buildRegistry(bundle: AppBundle): ViewRegistry {
  const renderers = new Map<string, Renderer>();
  for (const view of bundle.views) {
    const renderer = rendererFor(view);
    if (renderer) {
      if (renderers.has(view.id)) throw new Error(`duplicate view id: ${view.id}`);
      renderers.set(view.id, renderer);
    }
  }

  const maps = bundle.views.filter((v) => MAP_KINDS.has(v.kind)).map((v) => v.id);
  const charts = bundle.views
    .filter((v) => !MAP_KINDS.has(v.kind) && v.kind !== "data_table" && v.kind !== "status_bar")
    .map((v) => v.id);
  const tables = bundle.views.filter((v) => v.kind === "data_table").map((v) => v.id);

  let slots: { section: string; views: string[] }[];
  if (bundle.layout === "multi_map_rows") {
    // one row per map, each paired with a share of the charts, table last
    slots = maps.map((m, i) => ({
      section: `map-row-${i + 1}`,
      views: [m, ...charts.filter((_, j) => j % Math.max(1, maps.length) === i)],
    }));
    slots.push({ section: "table-row", views: tables });
  } else {
    slots = [
      { section: "main-map", views: maps.slice(0, 1) },
      { section: "layers", views: maps.slice(1) },
      { section: "charts", views: charts },
      { section: "table-row", views: tables },
    ];
  }
  return { renderers, slots: slots.filter((s) => s.views.length) };
}

export function renderStatus(selected: number, total: number): string {
  return (
    `<div class="status-bar"><strong>${selected}</strong> selected out of ` +
    `<strong>${total}</strong> records | <a href="#" data-reset-all="1">Reset All</a></div>`
  );
}
