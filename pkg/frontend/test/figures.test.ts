import { describe, expect, it } from "vitest";
import { existsSync, mkdtempSync, readFileSync, statSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { main } from "../src/cli.ts";

const td = (name: string) => join(__dirname, "..", "testdata", name);

function render(figure: string, inputs: string[], overlay: string | null): string {
  const dir = mkdtempSync(join(tmpdir(), "fig-"));
  const out = join(dir, `${figure}.svg`);
  const argv = [figure, "--out", out];
  for (const i of inputs) argv.push("--input", i);
  if (overlay) argv.push("--overlay", overlay);
  const rc = main(argv);
  expect(rc).toBe(0);
  expect(existsSync(out)).toBe(true);
  expect(statSync(out).size).toBeGreaterThan(500);
  const svg = readFileSync(out, "utf-8");
  expect(svg.startsWith("<svg")).toBe(true);
  expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
  return svg;
}

describe("the five figure layouts", () => {
  it("finite-size dephasing panels with the closed-form overlay", () => {
    const svg = render(
      "finite-panels",
      [td("dephasing_n70.csv"), td("dephasing_n50.csv"), td("dephasing_n30.csv"), td("dephasing_n10.csv")],
      td("overlay_dephasing.json")
    );
    expect((svg.match(/<circle/g) ?? []).length).toBeGreaterThan(100);
    expect((svg.match(/<path/g) ?? []).length).toBeGreaterThanOrEqual(2);
  });

  it("ellipse union for the non-normal model", () => {
    const svg = render("ellipses", [td("non_normal_nhe.csv")], td("overlay_non_normal.json"));
    // one closed polyline per momentum plus the polygon overlay
    expect((svg.match(/<path/g) ?? []).length).toBeGreaterThan(40);
  });

  it("free vs periodic hopping panels with the unit circle", () => {
    const svg = render(
      "boundary",
      [td("hopping_periodic.csv"), td("hopping_free.csv")],
      td("overlay_hopping.json")
    );
    // two panels side by side, each with the reference ring
    expect((svg.match(/<g transform/g) ?? []).length).toBe(2);
  });

  it("disorder overlay", () => {
    const svg = render("disorder", [td("anderson_clean.csv"), td("anderson_disordered.csv")], null);
    expect((svg.match(/<circle/g) ?? []).length).toBeGreaterThan(700);
  });

  it("pseudospectrum heatmap", () => {
    const svg = render("heatmap", [td("pseudospectrum.csv")], null);
    expect((svg.match(/<rect/g) ?? []).length).toBeGreaterThan(24 * 24);
  });
});

describe("failure modes", () => {
  it("missing column exits 2", () => {
    const dir = mkdtempSync(join(tmpdir(), "fig-"));
    const rc = main(["heatmap", "--input", td("dephasing_n10.csv"), "--out", join(dir, "x.svg")]);
    expect(rc).toBe(2);
  });

  it("unknown figure exits 2", () => {
    const dir = mkdtempSync(join(tmpdir(), "fig-"));
    const rc = main(["nope", "--input", td("dephasing_n10.csv"), "--out", join(dir, "x.svg")]);
    expect(rc).toBe(2);
  });

  it("empty cloud still renders empty axes", () => {
    // an empty EIG cloud has a header only; the extent then fails loudly
    const dir = mkdtempSync(join(tmpdir(), "fig-"));
    const rc = main(["disorder", "--input", td("anderson_clean.csv"), "--input", td("anderson_clean.csv"), "--out", join(dir, "x.svg")]);
    expect(rc).toBe(0);
  });
});
