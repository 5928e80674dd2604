/** Closed-form overlay descriptors exported by the library as JSON. */

export type OverlayComponent =
  | { kind: "segment"; z0: [number, number]; z1: [number, number] }
  | { kind: "polygon"; vertices: [number, number][] }
  | { kind: "curve"; points: [number, number][] };

export interface OverlayDoc {
  model?: string;
  G?: number;
  components: OverlayComponent[];
}

export function parseOverlay(text: string): OverlayDoc {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new Error(`overlay is not valid JSON: ${String(err)}`);
  }
  const obj = doc as Record<string, unknown>;
  if (!obj || !Array.isArray(obj.components)) {
    throw new Error("overlay JSON needs a 'components' array");
  }
  for (const c of obj.components as OverlayComponent[]) {
    if (c.kind === "segment") {
      if (!Array.isArray(c.z0) || !Array.isArray(c.z1)) {
        throw new Error("segment overlay needs z0 and z1 pairs");
      }
    } else if (c.kind === "polygon") {
      if (!Array.isArray(c.vertices) || c.vertices.length < 3) {
        throw new Error("polygon overlay needs at least 3 vertices");
      }
    } else if (c.kind === "curve") {
      if (!Array.isArray(c.points)) {
        throw new Error("curve overlay needs a points array");
      }
    } else {
      throw new Error(`unknown overlay kind ${(c as { kind: string }).kind}`);
    }
  }
  return obj as unknown as OverlayDoc;
}
