/**
 * The gesture map: every user interaction resolves to exactly one wire
 * command, and nothing mutates locally — the engine's notifications are
 * the only way state comes back.
 */

import type { Command, FilterSpec, Geometry, ProjectionSpec } from "./protocol.js";
import { selfIntersects } from "./geometry.js";

export function brushRange(viewId: string, lo: number | string, hi: number | string): Command {
  return { cmd: "set_filter", view: viewId, filter: { type: "range", lo, hi } };
}

/** Legend / slice / sub-bar / region click: toggle membership in a set filter. */
export function categoryToggle(
  viewId: string,
  current: string[] | null,
  value: string,
  filterType: "set" | "tag_any" = "set",
): Command {
  const selected = new Set(current ?? []);
  if (selected.has(value)) selected.delete(value);
  else selected.add(value);
  if (selected.size === 0) return { cmd: "clear_filter", view: viewId };
  const filter: FilterSpec = { type: filterType, values: [...selected].sort() };
  return { cmd: "set_filter", view: viewId, filter };
}

/** Polygon-brush on a scatterplot: filter to the enclosed record keys. */
export function scatterBrush(viewId: string, keys: string[]): Command {
  if (keys.length === 0) return { cmd: "clear_filter", view: viewId };
  return { cmd: "set_filter", view: viewId, filter: { type: "key", keys: [...keys].sort() } };
}

export function rowClick(key: string): Command {
  return { cmd: "row_click", key };
}

export interface DrawResult {
  command?: Command;
  error?: string;
}

/** Map draw tool: bbox / circle pass through, polygons must be simple. */
export function mapDraw(mapId: string, geometry: Geometry): DrawResult {
  if (geometry.type === "polygon") {
    const ring = geometry.rings[0] as [number, number][];
    if (ring.length < 4) return { error: "polygon needs at least 3 distinct vertices" };
    if (selfIntersects(ring)) return { error: "self-intersecting polygon rejected" };
  }
  return { command: { cmd: "spatial_select", map: mapId, geometry } };
}

export function clearSpatial(mapId: string): Command {
  return { cmd: "clear_spatial", map: mapId };
}

export function variableDropdown(mapId: string, column: string): Command {
  return { cmd: "set_variable", map: mapId, column };
}

export function projectionDropdown(viewId: string, projection: ProjectionSpec | string): Command {
  const spec = typeof projection === "string" ? { kind: projection } : projection;
  return { cmd: "set_projection", view: viewId, projection: spec as ProjectionSpec };
}

export function binWidthDropdown(viewId: string, width: number): Command {
  return { cmd: "set_bin_width", view: viewId, width };
}

export function axesDropdown(viewId: string, x?: string, y?: string): Command {
  return {
    cmd: "set_axes",
    view: viewId,
    ...(x !== undefined ? { x } : {}),
    ...(y !== undefined ? { y } : {}),
  };
}

export function resetView(viewId: string): Command {
  return { cmd: "clear_filter", view: viewId };
}

export function resetAll(): Command {
  return { cmd: "clear_all" };
}

export function tableQuery(
  sort: [string, "asc" | "desc"] | null,
  search: string,
  page: [number, number],
): Command {
  return { cmd: "query_table", sort, search, page };
}
