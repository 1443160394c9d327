/** Tiny HTML-string builders; renderers stay testable without a DOM. */

export function esc(value: unknown): string {
  return String(value)
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function h(
  tag: string,
  attrs: Record<string, string | number | undefined> = {},
  children: string[] | string = "",
): string {
  const attr = Object.entries(attrs)
    .filter(([, v]) => v !== undefined)
    .map(([k, v]) => ` ${k}="${esc(v)}"`)
    .join("");
  const body = Array.isArray(children) ? children.join("") : children;
  return `<${tag}${attr}>${body}</${tag}>`;
}

export function fmt(value: unknown): string {
  if (typeof value === "number") {
    return Number.isInteger(value) ? String(value) : value.toPrecision(4);
  }
  return value === null || value === undefined ? "" : String(value);
}
