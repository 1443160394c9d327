import { describe, expect, it } from "vitest";
import * as gestures from "../src/gestures.js";

describe("gesture map", () => {
  it("brush becomes a half-open range filter", () => {
    expect(gestures.brushRange("h", 5, 10)).toEqual({
      cmd: "set_filter", view: "h", filter: { type: "range", lo: 5, hi: 10 },
    });
  });

  it("category click toggles membership and sorts values", () => {
    const first = gestures.categoryToggle("d", null, "B");
    expect(first).toEqual({ cmd: "set_filter", view: "d", filter: { type: "set", values: ["B"] } });
    const added = gestures.categoryToggle("d", ["B"], "A");
    expect(added).toEqual({ cmd: "set_filter", view: "d", filter: { type: "set", values: ["A", "B"] } });
    const removed = gestures.categoryToggle("d", ["A", "B"], "A");
    expect(removed).toEqual({ cmd: "set_filter", view: "d", filter: { type: "set", values: ["B"] } });
  });

  it("removing the last member clears the filter instead", () => {
    expect(gestures.categoryToggle("d", ["A"], "A")).toEqual({ cmd: "clear_filter", view: "d" });
  });

  it("tag charts toggle with tag_any semantics", () => {
    expect(gestures.categoryToggle("parts", null, "liver", "tag_any")).toEqual({
      cmd: "set_filter", view: "parts", filter: { type: "tag_any", values: ["liver"] },
    });
  });

  it("scatter polygon-brush filters the enclosed record keys", () => {
    expect(gestures.scatterBrush("sc", ["r2", "r1"])).toEqual({
      cmd: "set_filter", view: "sc", filter: { type: "key", keys: ["r1", "r2"] },
    });
    expect(gestures.scatterBrush("sc", [])).toEqual({ cmd: "clear_filter", view: "sc" });
  });

  it("map draw passes simple polygons and rejects bowties", () => {
    const ok = gestures.mapDraw("m", {
      type: "polygon", rings: [[[0, 0], [2, 0], [2, 2], [0, 2], [0, 0]]],
    });
    expect(ok.command?.cmd).toBe("spatial_select");
    const bad = gestures.mapDraw("m", {
      type: "polygon", rings: [[[0, 0], [2, 2], [2, 0], [0, 2], [0, 0]]],
    });
    expect(bad.command).toBeUndefined();
    expect(bad.error).toMatch(/self-intersecting/);
  });

  it("dropdowns map to resymbolize/reexpress commands", () => {
    expect(gestures.variableDropdown("map", "svi_score"))
      .toEqual({ cmd: "set_variable", map: "map", column: "svi_score" });
    expect(gestures.projectionDropdown("mult", "albers_conic"))
      .toEqual({ cmd: "set_projection", view: "mult", projection: { kind: "albers_conic" } });
    expect(gestures.binWidthDropdown("h", 5))
      .toEqual({ cmd: "set_bin_width", view: "h", width: 5 });
    expect(gestures.axesDropdown("sc", "a", undefined))
      .toEqual({ cmd: "set_axes", view: "sc", x: "a" });
  });

  it("resets map to clear commands", () => {
    expect(gestures.resetView("h")).toEqual({ cmd: "clear_filter", view: "h" });
    expect(gestures.resetAll()).toEqual({ cmd: "clear_all" });
    expect(gestures.clearSpatial("m")).toEqual({ cmd: "clear_spatial", map: "m" });
  });
});
