/**
 * Client-side view of an app bundle: the manifest plus the GeoJSON
 * sources the map renderers draw. Tabular data never loads here; every
 * number a view shows arrives in engine payloads.
 */

export interface ViewSpec {
  id: string;
  kind: string;
  bindings: Record<string, string>;
  options: Record<string, any>;
}

export interface FeatureGeometry {
  type: "Point" | "Polygon" | "MultiPolygon";
  coordinates: any;
}

export interface Feature {
  key: string;
  geometry: FeatureGeometry;
  properties: Record<string, unknown>;
}

export interface AppBundle {
  name: string;
  layout: "single_map" | "multi_map_rows";
  views: ViewSpec[];
  palettes: Record<string, string[]>;
  features: Record<string, Feature[]>;
}

export interface RawManifest {
  name?: string;
  layout?: string;
  views?: any[];
  palettes?: Record<string, string[]>;
  geometry?: { id: string; path: string; key_property: string }[];
}

/**
 * Assemble the client bundle from the parsed manifest and the GeoJSON
 * documents fetched from the same static directory, keyed by source id.
 */
export function buildBundle(
  manifest: RawManifest,
  geojson: Record<string, any>,
): AppBundle {
  const features: Record<string, Feature[]> = {};
  for (const src of manifest.geometry ?? []) {
    const doc = geojson[src.id];
    if (!doc) continue;
    features[src.id] = (doc.features ?? []).map((f: any) => ({
      key: String(f.properties?.[src.key_property]),
      geometry: f.geometry,
      properties: f.properties ?? {},
    }));
  }
  return {
    name: manifest.name ?? "CoordLens app",
    layout: manifest.layout === "multi_map_rows" ? "multi_map_rows" : "single_map",
    views: (manifest.views ?? []).map((v, i) => ({
      id: String(v.id ?? `view${i}`),
      kind: String(v.kind ?? ""),
      bindings: v.bindings ?? {},
      options: v.options ?? {},
    })),
    palettes: manifest.palettes ?? {},
    features,
  };
}

export function paletteFor(bundle: AppBundle, view: ViewSpec, size: number): string[] {
  const named = bundle.palettes[view.options.palette as string];
  const base = named ?? DEFAULT_PALETTE;
  const out: string[] = [];
  for (let i = 0; i < size; i++) out.push(base[i % base.length]);
  return out;
}

/** Color-blind-safe default (Okabe-Ito). */
export const DEFAULT_PALETTE = [
  "#0072b2", "#e69f00", "#009e73", "#cc79a7",
  "#56b4e9", "#d55e00", "#f0e442", "#999999",
];
