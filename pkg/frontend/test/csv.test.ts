import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { join } from "node:path";

import { parseCloud, parseField, groupByMomentum, CLOUD_HEADER } from "../src/csv.ts";
import { parseOverlay } from "../src/overlay.ts";

const data = (name: string) =>
  readFileSync(join(__dirname, "..", "testdata", name), "utf-8");

describe("cloud CSV parsing", () => {
  it("reads a golden finite cloud", () => {
    const pts = parseCloud(data("dephasing_n10.csv"));
    expect(pts.length).toBe(100);
    expect(pts.every((p) => p.tag === "EIG")).toBe(true);
    expect(pts.every((p) => Number.isFinite(p.re) && Number.isFinite(p.im))).toBe(true);
  });

  it("reads a spectrum cloud with NHE and JUMP tags", () => {
    const pts = parseCloud(data("non_normal_nhe.csv"));
    const tags = new Set(pts.map((p) => p.tag));
    expect(tags.has("NHE")).toBe(true);
    const fibers = groupByMomentum(pts.filter((p) => p.tag === "NHE"));
    expect(fibers.size).toBe(48);
  });

  it("fails loudly on a wrong header", () => {
    expect(() => parseCloud("x,y\n1,2\n")).toThrow(/must start with header/);
    expect(() => parseCloud("")).toThrow(/must start with header/);
  });

  it("fails loudly on a malformed row", () => {
    expect(() => parseCloud(`${CLOUD_HEADER}\n1,2,EIG\n`)).toThrow(/expected 5 columns/);
    expect(() => parseCloud(`${CLOUD_HEADER}\n1,2,WAT,,\n`)).toThrow(/unknown tag/);
    expect(() => parseCloud(`${CLOUD_HEADER}\nfoo,2,EIG,,\n`)).toThrow(/non-numeric/);
  });
});

describe("field CSV parsing", () => {
  it("reads the pseudospectrum golden file", () => {
    const pts = parseField(data("pseudospectrum.csv"));
    expect(pts.length).toBe(24 * 24);
    expect(Math.min(...pts.map((p) => p.sigmaMin))).toBeGreaterThanOrEqual(0);
  });

  it("rejects a cloud CSV", () => {
    expect(() => parseField(data("dephasing_n10.csv"))).toThrow(/sigma_min/);
  });
});

describe("overlay parsing", () => {
  it("reads the closed-form overlays", () => {
    for (const name of [
      "overlay_dephasing.json",
      "overlay_non_normal.json",
      "overlay_hopping.json",
    ]) {
      const doc = parseOverlay(data(name));
      expect(doc.components.length).toBeGreaterThan(0);
    }
  });

  it("rejects malformed overlays", () => {
    expect(() => parseOverlay("{}")).toThrow(/components/);
    expect(() => parseOverlay("not json")).toThrow(/valid JSON/);
    expect(() => parseOverlay('{"components":[{"kind":"blob"}]}')).toThrow(/unknown overlay/);
  });
});
