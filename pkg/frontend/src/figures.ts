/** The five figure layouts, assembled from CLI outputs. */

import { CloudPoint, FieldPoint, groupByMomentum } from "./csv.ts";
import { OverlayDoc } from "./overlay.ts";
import { extentOf, heatColor, Panel, row, Extent } from "./svg.ts";

const CLOUD_COLORS: Record<string, string> = {
  NHE: "#4169e1",
  JUMP: "#d2691e",
  EIG: "#2f4f4f",
};

function drawOverlay(panel: Panel, overlay: OverlayDoc | null, color = "#cc2222"): void {
  if (!overlay) return;
  for (const c of overlay.components) {
    if (c.kind === "segment") {
      panel.polyline([c.z0, c.z1], color, 2.2);
    } else if (c.kind === "polygon") {
      panel.polyline(c.vertices, color, 2.2, true);
    } else {
      panel.polyline(c.points, color, 1.2);
    }
  }
}

function overlayExtent(overlay: OverlayDoc | null): { re: number; im: number }[] {
  if (!overlay) return [];
  const pts: { re: number; im: number }[] = [];
  for (const c of overlay.components) {
    const coords =
      c.kind === "segment" ? [c.z0, c.z1] : c.kind === "polygon" ? c.vertices : c.points;
    for (const [re, im] of coords) pts.push({ re, im });
  }
  return pts;
}

/** Finite-size panel family: the four clouds share axes, larger sizes are
 * drawn first so the small systems stay visible on top. */
export function finiteSizePanels(
  clouds: { label: string; points: CloudPoint[] }[],
  overlay: OverlayDoc | null
): string {
  if (clouds.length === 0) throw new Error("no clouds given");
  const all = clouds.flatMap((c) => c.points).concat(overlayExtent(overlay) as CloudPoint[]);
  const extent = extentOf(all);
  const panel = new Panel(extent, { title: "finite-size spectra" });
  const sizes = [...clouds].sort((a, b) => b.points.length - a.points.length);
  const palette = ["#9ecae1", "#6baed6", "#3182bd", "#08519c"];
  sizes.forEach((cloud, i) => {
    panel.scatter(cloud.points, palette[i % palette.length], 2.0);
  });
  drawOverlay(panel, overlay);
  clouds.forEach((c, i) => {
    panel.label(c.label, extent.x0 + 0.2, extent.y1 - 0.35 * (i + 1), "#08519c");
  });
  return panel.svg();
}

/** Ellipse family: one polyline per momentum fiber of an NHE cloud. */
export function ellipseFamily(points: CloudPoint[], overlay: OverlayDoc | null): string {
  const nhe = points.filter((p) => p.tag === "NHE");
  if (nhe.length === 0) throw new Error("no NHE points in the cloud");
  const extent = extentOf(nhe.concat(overlayExtent(overlay) as CloudPoint[]));
  const panel = new Panel(extent, { title: "fiber ellipse family" });
  const fibers = groupByMomentum(nhe);
  const qs = [...fibers.keys()].sort((a, b) => a - b);
  qs.forEach((q, i) => {
    const pts = fibers.get(q)!;
    pts.sort((a, b) => (a.theta ?? 0) - (b.theta ?? 0));
    const hue = Math.round((200 * i) / Math.max(1, qs.length - 1)) + 20;
    panel.polyline(
      pts.map((p) => [p.re, p.im] as [number, number]).concat([[pts[0].re, pts[0].im]]),
      `hsl(${hue},60%,45%)`,
      0.8
    );
  });
  drawOverlay(panel, overlay);
  return panel.svg();
}

/** Free vs periodic panels with the unit-circle reference ring. */
export function boundaryComparison(
  periodic: CloudPoint[],
  free: CloudPoint[],
  overlay: OverlayDoc | null
): string {
  const refPts = overlayExtent(overlay) as CloudPoint[];
  const extent = extentOf(periodic.concat(free, refPts));
  const panels = [
    { pts: periodic, title: "periodic boundary" },
    { pts: free, title: "free boundary" },
  ].map(({ pts, title }) => {
    const p = new Panel(extent, { title });
    p.circle(0, 0, 1, "#cc2222");
    p.scatter(pts, CLOUD_COLORS.EIG, 1.8);
    drawOverlay(p, overlay, "#118833");
    return p;
  });
  return row(panels);
}

/** Clean and disordered spectra overlaid (disordered drawn on top). */
export function disorderOverlay(clean: CloudPoint[], disordered: CloudPoint[]): string {
  const extent = extentOf(clean.concat(disordered));
  const panel = new Panel(extent, { title: "random potential" });
  panel.scatter(clean, "#4169e1", 2.0);
  panel.scatter(disordered, "#ff8c00", 1.6);
  return panel.svg();
}

/** Pseudospectrum heatmap: log10 of sigma_min per grid cell. */
export function pseudospectrumHeatmap(field: FieldPoint[]): string {
  if (field.length === 0) throw new Error("empty pseudospectrum field");
  const res = new Set(field.map((p) => p.re)).size;
  const ims = [...new Set(field.map((p) => p.im))].sort((a, b) => a - b);
  const res2 = ims.length;
  const xs = [...new Set(field.map((p) => p.re))].sort((a, b) => a - b);
  const dx = xs.length > 1 ? xs[1] - xs[0] : 1;
  const dy = ims.length > 1 ? ims[1] - ims[0] : 1;
  const extent: Extent = {
    x0: xs[0] - dx / 2,
    x1: xs[xs.length - 1] + dx / 2,
    y0: ims[0] - dy / 2,
    y1: ims[ims.length - 1] + dy / 2,
  };
  const values = field.map((p) => Math.log10(Math.max(p.sigmaMin, 1e-18)));
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const panel = new Panel(extent, {
    title: `pseudospectrum (log10 sigma_min, ${res} x ${res2} grid)`,
  });
  field.forEach((p, i) => {
    const t = hi > lo ? 1 - (values[i] - lo) / (hi - lo) : 0.5;
    panel.cell(p.re - dx / 2, p.im - dy / 2, dx, dy, heatColor(t));
  });
  return panel.svg();
}
