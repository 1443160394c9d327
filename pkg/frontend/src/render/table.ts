/** The bidirectional data table: search, sort, paginate, row-click filter. */

import { esc, fmt, h } from "../dom.js";
import type { ViewSpec } from "../bundle.js";
import type { Payload } from "../protocol.js";

export function renderTable(payload: Payload, view: ViewSpec, selectedKey: string | null): string {
  const rows: Record<string, unknown>[] = payload.rows ?? [];
  const columns = rows.length ? Object.keys(rows[0]) : [];
  const [sortCol, sortDir] = payload.sort ?? [null, null];
  const header = columns.map((c) =>
    h("th", { "data-sort": c, class: c === sortCol ? `sorted ${sortDir}` : undefined },
      esc(c)));
  const body = rows.map((row) => {
    const key = String(Object.values(row)[0]);
    const cells = columns.map((c) => h("td", {}, esc(fmt(row[c]))));
    return h("tr", {
      "data-key": key,
      class: key === selectedKey ? "picked" : undefined,
    }, cells);
  });
  const [offset, limit] = payload.page ?? [0, rows.length];
  const page = Math.floor(offset / Math.max(1, limit)) + 1;
  const pages = Math.max(1, Math.ceil(payload.total / Math.max(1, limit)));
  return h("div", { class: "data-table" }, [
    h("header", {}, [
      h("input", { type: "search", value: payload.search ?? "", "data-view": view.id,
                   placeholder: "search text columns" }),
      h("span", { class: "total" }, `${fmt(payload.total)} matching`),
    ]),
    h("div", { class: "scroll-x" },
      h("table", {}, [h("thead", {}, h("tr", {}, header)), h("tbody", {}, body)])),
    h("footer", {}, [
      h("button", { "data-page": "prev", disabled: page <= 1 ? "disabled" : undefined }, "prev"),
      h("span", {}, `page ${page} / ${pages}`),
      h("button", { "data-page": "next", disabled: page >= pages ? "disabled" : undefined }, "next"),
    ]),
  ]);
}
