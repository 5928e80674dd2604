/** Tiny SVG scene builder: scatter layers, polylines, filled cells, axes.
 * No DOM involved; figures are assembled as strings and written to disk. */

export interface Extent {
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}

export interface PanelOptions {
  width?: number;
  height?: number;
  margin?: number;
  title?: string;
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export class Panel {
  readonly width: number;
  readonly height: number;
  readonly margin: number;
  readonly extent: Extent;
  private readonly parts: string[] = [];

  constructor(extent: Extent, opts: PanelOptions = {}) {
    this.width = opts.width ?? 420;
    this.height = opts.height ?? 420;
    this.margin = opts.margin ?? 42;
    if (!(extent.x1 > extent.x0) || !(extent.y1 > extent.y0)) {
      throw new Error("panel extent must have positive area");
    }
    this.extent = extent;
    if (opts.title) {
      this.parts.push(
        `<text x="${this.width / 2}" y="16" text-anchor="middle" ` +
          `font-family="sans-serif" font-size="13">${esc(opts.title)}</text>`
      );
    }
    this.drawAxes();
  }

  sx(x: number): number {
    const { x0, x1 } = this.extent;
    return this.margin + ((x - x0) / (x1 - x0)) * (this.width - 2 * this.margin);
  }

  sy(y: number): number {
    const { y0, y1 } = this.extent;
    return this.height - this.margin - ((y - y0) / (y1 - y0)) * (this.height - 2 * this.margin);
  }

  private drawAxes(): void {
    const { x0, x1, y0, y1 } = this.extent;
    const axis = `stroke="#999" stroke-width="1"`;
    if (y0 < 0 && y1 > 0) {
      this.parts.push(
        `<line x1="${this.sx(x0)}" y1="${this.sy(0)}" x2="${this.sx(x1)}" y2="${this.sy(0)}" ${axis}/>`
      );
    }
    if (x0 < 0 && x1 > 0) {
      this.parts.push(
        `<line x1="${this.sx(0)}" y1="${this.sy(y0)}" x2="${this.sx(0)}" y2="${this.sy(y1)}" ${axis}/>`
      );
    }
    this.parts.push(
      `<rect x="${this.margin}" y="${this.margin}" width="${this.width - 2 * this.margin}" ` +
        `height="${this.height - 2 * this.margin}" fill="none" stroke="#333" stroke-width="1"/>`
    );
  }

  scatter(points: Iterable<{ re: number; im: number }>, color: string, r = 1.6): number {
    let n = 0;
    const chunks: string[] = [];
    for (const p of points) {
      chunks.push(
        `<circle cx="${this.sx(p.re).toFixed(2)}" cy="${this.sy(p.im).toFixed(2)}" r="${r}" fill="${color}"/>`
      );
      n += 1;
    }
    this.parts.push(`<g opacity="0.75">${chunks.join("")}</g>`);
    return n;
  }

  polyline(points: [number, number][], color: string, width = 1.8, close = false): void {
    if (points.length < 2) return;
    const d = points
      .map(([x, y], i) => `${i === 0 ? "M" : "L"}${this.sx(x).toFixed(2)},${this.sy(y).toFixed(2)}`)
      .join(" ");
    this.parts.push(
      `<path d="${d}${close ? " Z" : ""}" fill="none" stroke="${color}" stroke-width="${width}"/>`
    );
  }

  circle(cx: number, cy: number, radius: number, color: string): void {
    // reference ring drawn in data coordinates (x-scale also used for y)
    const rPix = Math.abs(this.sx(cx + radius) - this.sx(cx));
    this.parts.push(
      `<circle cx="${this.sx(cx)}" cy="${this.sy(cy)}" r="${rPix.toFixed(2)}" ` +
        `fill="none" stroke="${color}" stroke-width="1.4"/>`
    );
  }

  cell(x: number, y: number, w: number, h: number, color: string): void {
    const px = this.sx(x);
    const py = this.sy(y + h);
    const pw = this.sx(x + w) - px;
    const ph = this.sy(y) - py;
    this.parts.push(
      `<rect x="${px.toFixed(2)}" y="${py.toFixed(2)}" width="${pw.toFixed(2)}" ` +
        `height="${ph.toFixed(2)}" fill="${color}" stroke="none"/>`
    );
  }

  label(text: string, x: number, y: number, color = "#222"): void {
    this.parts.push(
      `<text x="${this.sx(x)}" y="${this.sy(y)}" font-family="sans-serif" ` +
        `font-size="11" fill="${color}">${esc(text)}</text>`
    );
  }

  body(): string {
    return this.parts.join("\n");
  }

  svg(): string {
    return wrap(this.width, this.height, this.body());
  }
}

export function wrap(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n<rect width="100%" height="100%" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}

/** Arrange panels left-to-right into one SVG document. */
export function row(panels: Panel[]): string {
  const width = panels.reduce((acc, p) => acc + p.width, 0);
  const height = Math.max(...panels.map((p) => p.height));
  let x = 0;
  const parts: string[] = [];
  for (const p of panels) {
    parts.push(`<g transform="translate(${x},0)">${p.body()}</g>`);
    x += p.width;
  }
  return wrap(width, height, parts.join("\n"));
}

export function extentOf(
  points: Iterable<{ re: number; im: number }>,
  pad = 0.4
): Extent {
  let x0 = Infinity;
  let x1 = -Infinity;
  let y0 = Infinity;
  let y1 = -Infinity;
  for (const p of points) {
    x0 = Math.min(x0, p.re);
    x1 = Math.max(x1, p.re);
    y0 = Math.min(y0, p.im);
    y1 = Math.max(y1, p.im);
  }
  if (!Number.isFinite(x0)) {
    throw new Error("cannot compute the extent of an empty point set");
  }
  if (x1 - x0 < 1e-9) {
    x0 -= 1;
    x1 += 1;
  }
  if (y1 - y0 < 1e-9) {
    y0 -= 1;
    y1 += 1;
  }
  return { x0: x0 - pad, x1: x1 + pad, y0: y0 - pad, y1: y1 + pad };
}

/** Blue-to-warm color for a unit value (used by the heatmap). */
export function heatColor(t: number): string {
  const c = Math.max(0, Math.min(1, t));
  const r = Math.round(255 * Math.min(1, 1.6 * c));
  const g = Math.round(255 * Math.pow(c, 1.6));
  const b = Math.round(255 * (1 - 0.85 * c));
  return `rgb(${r},${g},${b})`;
}
