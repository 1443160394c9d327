/**
 * Browser entry: fetch the bundle from the directory this page is served
 * from, build the app, and wire DOM events to gestures. The engine is
 * injected as a Transport by the host page -- typically a worker that
 * owns the engine process and relays wire-protocol lines.
 */

import { App, type Transport } from "./app.js";
import { buildBundle, type RawManifest } from "./bundle.js";
import { parseNotification } from "./protocol.js";

export { App } from "./app.js";
export type { Transport } from "./app.js";
export * as gestures from "./gestures.js";
export * from "./protocol.js";
export { buildBundle } from "./bundle.js";
export { buildRegistry, renderStatus } from "./registry.js";

/** A Transport over any line-oriented duplex channel (worker, socket). */
export function lineTransport(
  sendLine: (line: string) => void,
  subscribe: (onLine: (line: string) => void) => void,
): Transport {
  let handler: (note: ReturnType<typeof parseNotification>) => void = () => {};
  subscribe((line) => {
    if (line.trim()) handler(parseNotification(line));
  });
  return {
    send: (command) => sendLine(JSON.stringify(command)),
    onNotification: (fn) => { handler = fn; },
  };
}

export async function bootstrap(root: HTMLElement, transport: Transport): Promise<App> {
  const manifest = (await (await fetch("app.config.json")).json()) as RawManifest;
  const geojson: Record<string, unknown> = {};
  for (const src of manifest.geometry ?? []) {
    geojson[src.id] = await (await fetch(src.path)).json();
  }
  const app = new App(buildBundle(manifest, geojson), transport);
  const repaint = () => { root.innerHTML = app.page(); };
  transport.onNotification((note) => { app.apply(note); repaint(); });

  root.addEventListener("click", (ev) => {
    const el = ev.target as HTMLElement;
    const resetAll = el.closest("[data-reset-all]");
    if (resetAll) { ev.preventDefault(); app.resetAll(); return; }
    const reset = el.closest("[data-reset]") as HTMLElement | null;
    if (reset) { ev.preventDefault(); app.resetView(reset.dataset.reset!); return; }
    const region = el.closest("[data-region]") as HTMLElement | null;
    if (region) { app.regionClick(region.dataset.view!, region.dataset.region!); return; }
    const bin = el.closest("[data-value]") as HTMLElement | null;
    if (bin) {
      const section = el.closest("section[data-view]") as HTMLElement | null;
      if (section) app.categoryClick(section.dataset.view!, bin.dataset.value!);
      return;
    }
    const row = el.closest("tr[data-key]") as HTMLElement | null;
    if (row) { app.rowClick(row.dataset.key!); return; }
    const outlier = el.closest(".outlier[data-key]") as HTMLElement | null;
    if (outlier) { app.outlierClick(outlier.dataset.key!); }
  });

  root.addEventListener("change", (ev) => {
    const el = ev.target as HTMLElement;
    if (el instanceof HTMLSelectElement) {
      if (el.matches("select.variable")) app.setVariable(el.dataset.view!, el.value);
      else if (el.matches("select.projection")) app.setProjection(el.dataset.view!, el.value);
      else if (el.matches("select.bin-width")) app.setBinWidth(el.dataset.view!, Number(el.value));
      else if (el.matches("select[data-axis]")) {
        app.setAxes(el.dataset.view!,
          el.dataset.axis === "x" ? el.value : undefined,
          el.dataset.axis === "y" ? el.value : undefined);
      }
    } else if (el instanceof HTMLInputElement && el.matches(".mode-toggle input")) {
      app.toggleHeatmapMode(el.dataset.view!, el.checked ? "local" : "global");
    }
  });

  return app;
}
