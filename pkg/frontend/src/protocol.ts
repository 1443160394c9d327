/**
 * The wire schema shared verbatim with the engine: one JSON object per
 * line, commands in one direction, notifications in the other.
 */

export type FilterSpec =
  | null
  | { type: "range"; lo: number | string; hi: number | string }
  | { type: "set"; values: string[] }
  | { type: "tag_any"; values: string[] }
  | { type: "spatial"; geometry: Geometry }
  | { type: "key"; keys: string[] };

export type Geometry =
  | { type: "bbox"; west: number; south: number; east: number; north: number }
  | { type: "circle"; center: [number, number]; radius_m: number }
  | { type: "polygon"; rings: number[][][] }
  | { type: "multipolygon"; polygons: number[][][][] };

export type ProjectionSpec = {
  kind: "spherical_mercator" | "equirectangular" | "albers_conic" | "stereographic";
  [param: string]: number | string;
};

export type Command =
  | { cmd: "set_filter"; view: string; filter: FilterSpec }
  | { cmd: "clear_filter"; view: string }
  | { cmd: "clear_all" }
  | { cmd: "spatial_select"; map: string; geometry: Geometry }
  | { cmd: "clear_spatial"; map: string }
  | { cmd: "row_click"; key: string }
  | { cmd: "set_variable"; map: string; column: string }
  | { cmd: "set_projection"; view: string; projection: ProjectionSpec }
  | { cmd: "set_bin_width"; view: string; width: number }
  | { cmd: "set_axes"; view: string; x?: string; y?: string }
  | { cmd: "query_view"; view: string; options?: Record<string, unknown> }
  | { cmd: "query_table"; sort?: [string, "asc" | "desc"] | null; search?: string; page?: [number, number] }
  | { cmd: "query_heatmap"; map: string; mode?: "global" | "local" }
  | { cmd: "query_status" };

export interface StatusNotification {
  event: "status";
  revision: number;
  selected: number;
  total: number;
}

export interface ViewNotification {
  event: "view";
  revision: number;
  view: string;
  payload: Payload;
}

export interface ErrorNotification {
  event: "error";
  revision: number;
  code: string;
  message: string;
}

export type Notification = StatusNotification | ViewNotification | ErrorNotification;

/** Kind-discriminated view payloads; fields mirror docs/wire-protocol.md. */
export type Payload = { kind: string } & Record<string, any>;

export function parseNotification(line: string): Notification {
  return JSON.parse(line) as Notification;
}

export function serializeCommand(command: Command): string {
  return canonicalStringify(command);
}

/** JSON with sorted keys so logs compare byte-for-byte across hosts. */
export function canonicalStringify(value: unknown): string {
  if (value === null || typeof value !== "object") return JSON.stringify(value);
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalStringify).join(",") + "]";
  }
  const entries = Object.keys(value as object)
    .sort()
    .map((k) => JSON.stringify(k) + ":" + canonicalStringify((value as any)[k]));
  return "{" + entries.join(",") + "}";
}
