/** Figure regeneration entry point.
 *
 * Usage:
 *   node --experimental-strip-types src/cli.ts <figure> --out FILE \
 *        --input a.csv [--input b.csv ...] [--overlay overlay.json]
 *
 * Figures: finite-panels | ellipses | boundary | disorder | heatmap
 * Exit codes: 0 on success, 2 on input/schema errors.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { parseCloud, parseField } from "./csv.ts";
import { parseOverlay, OverlayDoc } from "./overlay.ts";
import {
  boundaryComparison,
  disorderOverlay,
  ellipseFamily,
  finiteSizePanels,
  pseudospectrumHeatmap,
} from "./figures.ts";

interface Args {
  figure: string;
  inputs: string[];
  overlay: string | null;
  out: string;
}

export function parseArgs(argv: string[]): Args {
  if (argv.length === 0) throw new Error("missing figure name");
  const figure = argv[0];
  const inputs: string[] = [];
  let overlay: string | null = null;
  let out = "";
  for (let i = 1; i < argv.length; i += 1) {
    const flag = argv[i];
    const val = argv[i + 1];
    if (flag === "--input") {
      if (!val) throw new Error("--input needs a value");
      inputs.push(val);
      i += 1;
    } else if (flag === "--overlay") {
      if (!val) throw new Error("--overlay needs a value");
      overlay = val;
      i += 1;
    } else if (flag === "--out") {
      if (!val) throw new Error("--out needs a value");
      out = val;
      i += 1;
    } else {
      throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!out) throw new Error("--out is required");
  if (inputs.length === 0) throw new Error("at least one --input is required");
  return { figure, inputs, overlay, out };
}

export function renderFigure(args: Args): string {
  const overlay: OverlayDoc | null = args.overlay
    ? parseOverlay(readFileSync(args.overlay, "utf-8"))
    : null;
  const clouds = () =>
    args.inputs.map((path) => ({
      label: basename(path).replace(/\.csv$/, ""),
      points: parseCloud(readFileSync(path, "utf-8")),
    }));
  switch (args.figure) {
    case "finite-panels":
      return finiteSizePanels(clouds(), overlay);
    case "ellipses": {
      const [c] = clouds();
      return ellipseFamily(c.points, overlay);
    }
    case "boundary": {
      const cs = clouds();
      if (cs.length !== 2) throw new Error("boundary needs two --input files");
      return boundaryComparison(cs[0].points, cs[1].points, overlay);
    }
    case "disorder": {
      const cs = clouds();
      if (cs.length !== 2) throw new Error("disorder needs two --input files");
      return disorderOverlay(cs[0].points, cs[1].points);
    }
    case "heatmap":
      return pseudospectrumHeatmap(parseField(readFileSync(args.inputs[0], "utf-8")));
    default:
      throw new Error(`unknown figure ${args.figure}`);
  }
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const svg = renderFigure(args);
    writeFileSync(args.out, svg, "utf-8");
    console.log(`wrote ${args.out} (${svg.length} bytes)`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 2;
  }
}

const isDirectRun = process.argv[1] !== undefined &&
  import.meta.url.endsWith(basename(process.argv[1]));
if (isDirectRun) {
  process.exit(main(process.argv.slice(2)));
}
