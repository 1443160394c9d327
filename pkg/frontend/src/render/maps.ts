/**
 * Map renderers: vector SVG for choropleths, small multiples, symbols,
 * and markers. The tile basemap (when a host mounts one) stays in Web
 * Mercator; projection switching applies to these vector views only.
 */

import { esc, fmt, h } from "../dom.js";
import { paletteFor, type AppBundle, type Feature, type ViewSpec } from "../bundle.js";
import { fitTransform, projectForward, ringToPath } from "../geometry.js";
import type { Payload, ProjectionSpec } from "../protocol.js";

const VIEWPORT = { width: 360, height: 240 };
const WEB_MERCATOR: ProjectionSpec = { kind: "spherical_mercator" };
const NO_DATA_COLOR = "#dddddd";

function featureRings(feature: Feature): number[][][] {
  if (feature.geometry.type === "Polygon") return feature.geometry.coordinates;
  if (feature.geometry.type === "MultiPolygon") {
    return feature.geometry.coordinates.flat();
  }
  return [];
}

function mapTransform(features: Feature[], spec: ProjectionSpec) {
  const projected: [number, number][] = [];
  for (const f of features) {
    for (const ring of featureRings(f)) {
      for (const [lon, lat] of ring) projected.push(projectForward(spec, lon, lat));
    }
    if (f.geometry.type === "Point") {
      const [lon, lat] = f.geometry.coordinates;
      projected.push(projectForward(spec, lon, lat));
    }
  }
  return fitTransform(projected, VIEWPORT);
}

function legend(breaks: number[] | null, colors: string[]): string {
  if (!breaks) return h("div", { class: "legend" }, "no classes");
  const entries = colors.map((color, i) =>
    h("span", { class: "legend-entry" }, [
      h("span", { class: "swatch", style: `background:${color}` }),
      `[${fmt(breaks[i])}, ${fmt(breaks[i + 1])})`,
    ]));
  const scroll = colors.length > 8 ? " scrollable" : "";
  return h("div", { class: `legend${scroll}` }, entries);
}

function choroplethSvg(
  features: Feature[],
  classes: Record<string, number | null>,
  selected: string[] | null,
  colors: string[],
  spec: ProjectionSpec,
  viewId: string,
): string {
  const tf = mapTransform(features, spec);
  const chosen = new Set(selected ?? []);
  const paths = features.map((f) => {
    const cls = classes[f.key];
    const fill = cls === null || cls === undefined ? NO_DATA_COLOR : colors[cls];
    const classAttr = chosen.size === 0 ? "region" : chosen.has(f.key) ? "region picked" : "region dim";
    const d = featureRings(f).map((ring) => ringToPath(ring, spec, tf)).join("");
    return h("path", { d, fill, class: classAttr, "data-region": f.key, "data-view": viewId });
  });
  return h("svg", { viewBox: `0 0 ${VIEWPORT.width} ${VIEWPORT.height}`, class: "map" }, paths);
}

export function renderChoropleth(payload: Payload, view: ViewSpec, bundle: AppBundle): string {
  const features = bundle.features[payload.geometry] ?? [];
  const colors = paletteFor(bundle, view, payload.k ?? 5);
  const variables: string[] = view.options.variables ?? [];
  const dropdown = h("select", { class: "variable", "data-view": view.id },
    variables.map((v) =>
      h("option", { value: v, selected: v === payload.variable ? "selected" : undefined }, esc(v))));
  return h("div", { class: "map-view choropleth" }, [
    h("header", {}, [esc(view.id), dropdown,
      h("a", { href: "#", class: "reset", "data-reset": view.id }, "reset map")]),
    choroplethSvg(features, payload.classes ?? {}, payload.selected, colors, WEB_MERCATOR, view.id),
    legend(payload.breaks, colors),
  ]);
}

export function renderSmallMultiples(payload: Payload, view: ViewSpec, bundle: AppBundle): string {
  const features = bundle.features[payload.geometry] ?? [];
  const spec = payload.projection as ProjectionSpec;
  const projections: (string | ProjectionSpec)[] = view.options.projections ?? [];
  const dropdown = h("select", { class: "projection", "data-view": view.id },
    projections.map((p) => {
      const kind = typeof p === "string" ? p : p.kind;
      return h("option", { value: kind, selected: kind === spec.kind ? "selected" : undefined }, esc(kind));
    }));
  const maps = Object.entries(payload.maps ?? {}).map(([variable, m]: [string, any]) => {
    const colors = paletteFor(bundle, view, m.k ?? 5);
    return h("figure", { class: "multiple", "data-variable": variable }, [
      h("figcaption", {}, esc(variable)),
      choroplethSvg(features, m.classes ?? {}, payload.selected, colors, spec, view.id),
      legend(m.breaks, colors),
    ]);
  });
  return h("div", { class: "map-view small-multiples" }, [
    h("header", {}, [esc(view.id), dropdown,
      h("a", { href: "#", class: "reset", "data-reset": view.id }, "reset map")]),
    h("div", { class: "multiples-row" }, maps),
  ]);
}

export function renderPropSymbol(payload: Payload, view: ViewSpec, bundle: AppBundle): string {
  const features = bundle.features[payload.geometry] ?? [];
  const byKey = new Map(features.map((f) => [f.key, f]));
  const bins: [string, number][] = payload.bins ?? [];
  const maxValue = Math.max(1, ...bins.map(([, v]) => v));
  const tf = mapTransform(features, WEB_MERCATOR);
  const chosen = new Set<string>(payload.selected ?? []);
  const symbols = bins.filter(([key]) => byKey.has(key)).map(([key, value]) => {
    const f = byKey.get(key)!;
    const [lon, lat] = centroidOf(f);
    const [cx, cy] = tf(...projectForward(WEB_MERCATOR, lon, lat));
    const r = 2 + 16 * Math.sqrt(value / maxValue); // radius scales with sqrt(value)
    const cls = chosen.size === 0 || chosen.has(key) ? "symbol" : "symbol dim";
    return h("circle", {
      cx: cx.toFixed(1), cy: cy.toFixed(1), r: r.toFixed(1),
      class: cls, "data-region": key, "data-view": view.id,
      title: `${key}: ${fmt(value)}`,
    });
  });
  return h("div", { class: "map-view prop-symbol" }, [
    h("header", {}, [esc(view.id),
      h("a", { href: "#", class: "reset", "data-reset": view.id }, "reset map")]),
    h("svg", { viewBox: `0 0 ${VIEWPORT.width} ${VIEWPORT.height}`, class: "map" }, symbols),
  ]);
}

function centroidOf(feature: Feature): [number, number] {
  if (feature.geometry.type === "Point") return feature.geometry.coordinates;
  const ring = featureRings(feature)[0] ?? [[0, 0]];
  let [sx, sy] = [0, 0];
  const n = ring.length - 1 || 1;
  for (let i = 0; i < n; i++) {
    sx += ring[i][0];
    sy += ring[i][1];
  }
  return [sx / n, sy / n];
}

/** The drawn spatial selection stays visible until cleared. */
function selectionOutline(
  payload: Payload,
  tf: (x: number, y: number) => [number, number],
): string {
  const filter = payload.filter;
  if (!filter || filter.type !== "spatial") return "";
  const geom = filter.geometry;
  if (geom.type === "bbox") {
    const ring = [
      [geom.west, geom.south], [geom.east, geom.south],
      [geom.east, geom.north], [geom.west, geom.north], [geom.west, geom.south],
    ];
    return h("path", { d: ringToPath(ring, WEB_MERCATOR, tf), class: "selection-outline" });
  }
  if (geom.type === "polygon") {
    return geom.rings.map((ring: number[][]) =>
      h("path", { d: ringToPath(ring, WEB_MERCATOR, tf), class: "selection-outline" })).join("");
  }
  if (geom.type === "circle") {
    const [cx, cy] = tf(...projectForward(WEB_MERCATOR, geom.center[0], geom.center[1]));
    // radius in projected meters -> pixels via a second reference point
    const [ex] = tf(...projectForward(WEB_MERCATOR, geom.center[0] + 0.5, geom.center[1]));
    const mPerHalfDeg = 0.5 * 111320 * Math.cos((geom.center[1] * Math.PI) / 180);
    const r = Math.abs(ex - cx) * (geom.radius_m / mPerHalfDeg);
    return h("circle", { cx: cx.toFixed(1), cy: cy.toFixed(1), r: r.toFixed(1),
                         class: "selection-outline" });
  }
  return "";
}

const DRAW_INSTRUCTIONS = h("details", { class: "draw-help" }, [
  h("summary", {}, "spatial selection tool"),
  h("ol", {}, [
    h("li", {}, "Choose a shape: rectangle, circle, or polygon."),
    h("li", {}, "Draw it on the map; vertices click in order, double-click closes."),
    h("li", {}, "Charts and the table filter to the enclosed points immediately."),
    h("li", {}, "Use “clear selection” to remove the shape and its filter."),
  ]),
]);

export function renderMarkers(payload: Payload, view: ViewSpec): string {
  const points: [string, number, number][] = payload.points ?? [];
  const clusters: any[] = payload.clusters ?? [];
  const body: string[] = [];
  let outlineTf: ((x: number, y: number) => [number, number]) | null = null;
  if (clusters.length) {
    const projected = clusters.map((c) => projectForward(WEB_MERCATOR, c.lon, c.lat));
    const tf = fitTransform(projected, VIEWPORT);
    outlineTf = tf;
    clusters.forEach((c, i) => {
      const [cx, cy] = tf(...projected[i]);
      const members: string[] = c.members;
      if (members.length === 1) {
        body.push(h("circle", {
          cx: cx.toFixed(1), cy: cy.toFixed(1), r: 3,
          class: "marker", "data-key": members[0],
        }));
      } else {
        body.push(h("circle", {
          cx: cx.toFixed(1), cy: cy.toFixed(1), r: 9,
          class: "cluster", "data-size": members.length, "data-spiderfy": c.spiderfy ? "yes" : undefined,
        }));
        body.push(h("text", { x: cx.toFixed(1), y: cy.toFixed(1), class: "cluster-count" },
          String(members.length)));
        if (c.spiderfy) {
          // fanned-out members become individually clickable markers
          (c.spiderfy as [number, number][]).forEach(([dx, dy], j) => {
            body.push(h("circle", {
              cx: (cx + dx / 4).toFixed(1), cy: (cy + dy / 4).toFixed(1), r: 2,
              class: "marker spider", "data-key": members[j],
            }));
          });
        }
      }
    });
  } else if (points.length) {
    const projected = points.map(([, lon, lat]) => projectForward(WEB_MERCATOR, lon, lat));
    const tf = fitTransform(projected, VIEWPORT);
    outlineTf = tf;
    points.forEach(([key], i) => {
      const [cx, cy] = tf(...projected[i]);
      body.push(h("circle", { cx: cx.toFixed(1), cy: cy.toFixed(1), r: 2, class: "marker", "data-key": key }));
    });
  }
  if (outlineTf) body.push(selectionOutline(payload, outlineTf));
  const note = payload.capped
    ? h("p", { class: "note" }, `showing ${points.length} of ${payload.point_count} points`)
    : "";
  return h("div", { class: "map-view markers" }, [
    h("header", {}, [esc(view.id),
      h("span", { class: "count" }, `${fmt(payload.point_count)} points`),
      h("a", { href: "#", class: "draw", "data-draw": view.id }, "draw to filter"),
      h("a", { href: "#", class: "reset", "data-reset": view.id }, "clear selection")]),
    h("svg", { viewBox: `0 0 ${VIEWPORT.width} ${VIEWPORT.height}`, class: "map", "data-draw-target": view.id }, body),
    DRAW_INSTRUCTIONS,
    note,
  ]);
}

export function renderHeatmap(payload: Payload, view: ViewSpec): string {
  const { width, height, mode } = payload;
  const intensities: number[][] = payload.intensities ?? [];
  let peak = 0;
  for (const row of intensities) for (const v of row) peak = Math.max(peak, v);
  const cells: string[] = [];
  const cw = VIEWPORT.width / Math.max(1, width);
  const ch = VIEWPORT.height / Math.max(1, height);
  for (let j = 0; j < height; j++) {
    for (let i = 0; i < width; i++) {
      const v = intensities[j]?.[i] ?? 0;
      if (v <= 0) continue;
      cells.push(h("rect", {
        x: (i * cw).toFixed(1), y: (VIEWPORT.height - (j + 1) * ch).toFixed(1),
        width: cw.toFixed(1), height: ch.toFixed(1),
        class: "heat", style: `opacity:${(v / peak).toFixed(3)}`,
      }));
    }
  }
  const toggle = h("label", { class: "mode-toggle" }, [
    h("input", { type: "checkbox", "data-view": view.id, checked: mode === "local" ? "checked" : undefined }),
    "local (selection only)",
  ]);
  return h("div", { class: "map-view heatmap" }, [
    h("header", {}, [esc(view.id), toggle]),
    h("svg", { viewBox: `0 0 ${VIEWPORT.width} ${VIEWPORT.height}`, class: "map heat-layer" }, cells),
  ]);
}
