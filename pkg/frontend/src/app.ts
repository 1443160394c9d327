/**
 * The application shell: renders notifications into per-view HTML and
 * turns gestures into commands. It keeps no derived data of its own --
 * what the engine pushed is what the views show, so replaying the
 * emitted command log through the engine reproduces the UI exactly.
 */

import type { AppBundle } from "./bundle.js";
import * as gestures from "./gestures.js";
import { buildRegistry, renderStatus, type ViewRegistry } from "./registry.js";
import type { Command, Geometry, Notification, Payload, ProjectionSpec } from "./protocol.js";
import { serializeCommand } from "./protocol.js";

/** How commands leave the UI; notifications come back via the callback. */
export interface Transport {
  send(command: Command): void;
  onNotification(handler: (note: Notification) => void): void;
}

export class App {
  readonly bundle: AppBundle;
  readonly registry: ViewRegistry;
  readonly html = new Map<string, string>();
  readonly payloads = new Map<string, Payload>();
  readonly renderCounts = new Map<string, number>();
  readonly commandLog: Command[] = [];
  readonly errors: string[] = [];
  statusHtml = "";
  statusText = "";
  selected = 0;
  total = 0;
  revision = -1;
  private selectedKey: string | null = null;
  private readonly transport: Transport;

  constructor(bundle: AppBundle, transport: Transport) {
    this.bundle = bundle;
    this.registry = buildRegistry(bundle);
    this.transport = transport;
    transport.onNotification((note) => this.apply(note));
  }

  /** Apply one engine notification; stale revisions are discarded. */
  apply(note: Notification): void {
    if (note.revision < this.revision) return;
    this.revision = note.revision;
    if (note.event === "status") {
      this.selected = note.selected;
      this.total = note.total;
      this.statusText = `${note.selected} selected out of ${note.total} records`;
      this.statusHtml = renderStatus(note.selected, note.total);
      return;
    }
    if (note.event === "error") {
      this.errors.push(`${note.code}: ${note.message}`);
      return;
    }
    const renderer = this.registry.renderers.get(note.view);
    if (!renderer) return;
    this.payloads.set(note.view, note.payload);
    try {
      this.html.set(note.view, renderer(note.payload, {
        bundle: this.bundle,
        view: this.bundle.views.find((v) => v.id === note.view)!,
        selectedKey: this.selectedKey,
      }));
    } catch (err) {
      // a bad payload poisons only its own view
      this.html.set(note.view, `<div class="error-badge">${String(err)}</div>`);
    }
    this.renderCounts.set(note.view, (this.renderCounts.get(note.view) ?? 0) + 1);
  }

  private send(command: Command): void {
    this.commandLog.push(command);
    this.transport.send(command);
  }

  /** Serialized command log, one canonical JSON line per command. */
  logLines(): string[] {
    return this.commandLog.map(serializeCommand);
  }

  page(): string {
    const sections = this.registry.slots.map(({ section, views }) => {
      const body = views.map((id) => `<section data-view="${id}">${this.html.get(id) ?? ""}</section>`);
      return `<div class="slot ${section}" id="${section}">${body.join("")}</div>`;
    });
    const links = this.registry.slots
      .map(({ section }) => `<a href="#${section}">${section.replaceAll("-", " ")}</a>`)
      .join(" ");
    return `<nav>${this.bundle.name} ${links}</nav>${this.statusHtml}${sections.join("")}`;
  }

  // -- gestures ----------------------------------------------------------

  brushRange(viewId: string, lo: number | string, hi: number | string): void {
    this.send(gestures.brushRange(viewId, lo, hi));
  }

  categoryClick(viewId: string, value: string): void {
    const current = this.currentSetValues(viewId);
    this.send(gestures.categoryToggle(viewId, current, value, this.filterTypeOf(viewId)));
  }

  regionClick(viewId: string, regionKey: string): void {
    const payload = this.payloads.get(viewId);
    this.send(gestures.categoryToggle(viewId, payload?.selected ?? null, regionKey));
  }

  scatterBrush(viewId: string, keys: string[]): void {
    this.send(gestures.scatterBrush(viewId, keys));
  }

  outlierClick(key: string): void {
    this.selectedKey = this.selectedKey === key ? null : key;
    this.send(gestures.rowClick(key));
  }

  rowClick(key: string): void {
    this.selectedKey = this.selectedKey === key ? null : key;
    this.send(gestures.rowClick(key));
  }

  drawOnMap(mapId: string, geometry: Geometry): string | null {
    const { command, error } = gestures.mapDraw(mapId, geometry);
    if (error) {
      this.errors.push(error);
      return error;
    }
    this.send(command!);
    return null;
  }

  clearSpatial(mapId: string): void {
    this.send(gestures.clearSpatial(mapId));
  }

  setVariable(mapId: string, column: string): void {
    this.send(gestures.variableDropdown(mapId, column));
  }

  setProjection(viewId: string, projection: ProjectionSpec | string): void {
    this.send(gestures.projectionDropdown(viewId, projection));
  }

  setBinWidth(viewId: string, width: number): void {
    this.send(gestures.binWidthDropdown(viewId, width));
  }

  setAxes(viewId: string, x?: string, y?: string): void {
    this.send(gestures.axesDropdown(viewId, x, y));
  }

  queryTable(sort: [string, "asc" | "desc"] | null, search: string, page: [number, number]): void {
    this.send(gestures.tableQuery(sort, search, page));
  }

  toggleHeatmapMode(mapId: string, mode: "global" | "local"): void {
    this.send({ cmd: "query_heatmap", map: mapId, mode });
  }

  resetView(viewId: string): void {
    this.send(gestures.resetView(viewId));
  }

  resetAll(): void {
    this.selectedKey = null;
    this.send(gestures.resetAll());
  }

  private currentSetValues(viewId: string): string[] | null {
    const payload = this.payloads.get(viewId);
    const filter = payload?.filter;
    if (filter && (filter.type === "set" || filter.type === "tag_any")) return filter.values;
    return null;
  }

  private filterTypeOf(viewId: string): "set" | "tag_any" {
    // identity payloads carry their dimension kind so the first click
    // already sends the right filter variant
    return this.payloads.get(viewId)?.dim === "tag" ? "tag_any" : "set";
  }
}
