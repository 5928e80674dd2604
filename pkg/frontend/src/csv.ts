/** Parsers for the lindblad-spectra CLI's CSV outputs. */

export interface CloudPoint {
  re: number;
  im: number;
  tag: "NHE" | "JUMP" | "EIG";
  q: number | null;
  theta: number | null;
}

export interface FieldPoint {
  re: number;
  im: number;
  sigmaMin: number;
}

export const CLOUD_HEADER = "re,im,tag,q,theta";
export const FIELD_HEADER = "re,im,sigma_min";

function splitLines(text: string): string[] {
  return text.split("\n").filter((ln) => ln.length > 0);
}

function num(field: string, where: string): number {
  const v = Number(field);
  if (!Number.isFinite(v)) {
    throw new Error(`non-numeric field ${JSON.stringify(field)} in ${where}`);
  }
  return v;
}

/** Parse a spectrum cloud CSV; throws on any header or schema mismatch. */
export function parseCloud(text: string): CloudPoint[] {
  const lines = splitLines(text);
  if (lines.length === 0 || lines[0] !== CLOUD_HEADER) {
    throw new Error(
      `spectrum CSV must start with header "${CLOUD_HEADER}", got ` +
        JSON.stringify(lines[0] ?? "")
    );
  }
  return lines.slice(1).map((ln, i) => {
    const parts = ln.split(",");
    if (parts.length !== 5) {
      throw new Error(`row ${i + 2}: expected 5 columns, got ${parts.length}`);
    }
    const tag = parts[2];
    if (tag !== "NHE" && tag !== "JUMP" && tag !== "EIG") {
      throw new Error(`row ${i + 2}: unknown tag ${JSON.stringify(tag)}`);
    }
    return {
      re: num(parts[0], `row ${i + 2}`),
      im: num(parts[1], `row ${i + 2}`),
      tag,
      q: parts[3] === "" ? null : num(parts[3], `row ${i + 2}`),
      theta: parts[4] === "" ? null : num(parts[4], `row ${i + 2}`),
    };
  });
}

/** Parse a pseudospectrum field CSV (re,im,sigma_min). */
export function parseField(text: string): FieldPoint[] {
  const lines = splitLines(text);
  if (lines.length === 0 || lines[0] !== FIELD_HEADER) {
    throw new Error(
      `field CSV must start with header "${FIELD_HEADER}", got ` +
        JSON.stringify(lines[0] ?? "")
    );
  }
  return lines.slice(1).map((ln, i) => {
    const parts = ln.split(",");
    if (parts.length !== 3) {
      throw new Error(`row ${i + 2}: expected 3 columns, got ${parts.length}`);
    }
    return {
      re: num(parts[0], `row ${i + 2}`),
      im: num(parts[1], `row ${i + 2}`),
      sigmaMin: num(parts[2], `row ${i + 2}`),
    };
  });
}

/** Group cloud points by their momentum of origin (exact q values). */
export function groupByMomentum(points: CloudPoint[]): Map<number, CloudPoint[]> {
  const out = new Map<number, CloudPoint[]>();
  for (const p of points) {
    if (p.q === null) continue;
    const bucket = out.get(p.q);
    if (bucket) bucket.push(p);
    else out.set(p.q, [p]);
  }
  return out;
}
