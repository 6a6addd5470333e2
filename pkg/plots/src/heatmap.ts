/**
 * Heatmap renderer for 2-D sweep CSVs: one colored cell per grid point
 * on the viridis colormap with E_N = 0 pinned to the colormap floor,
 * unstable points drawn as hatched cells, plus a labeled colorbar.
 *
 * Usage: node dist/heatmap.js --input sweep.csv --output figure.svg
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { CsvFormatError, parseSweepCsv, type SweepTable } from "./csv.js";
import { normalize, viridis } from "./colormap.js";
import {
  document as svgDocument,
  fmt,
  frameBox,
  tag,
  text,
  ticks,
  type Frame,
} from "./svg.js";

const MARGIN = { left: 80, right: 110, top: 45, bottom: 60 };
const CELL_TARGET = 480;

function hatchPattern(): string {
  return tag("defs", {}, [
    tag(
      "pattern",
      {
        id: "hatch",
        width: 6,
        height: 6,
        patternUnits: "userSpaceOnUse",
        patternTransform: "rotate(45)",
      },
      [
        tag("rect", { x: 0, y: 0, width: 6, height: 6, fill: "#ffffff" }),
        tag("line", {
          x1: 0,
          y1: 0,
          x2: 0,
          y2: 6,
          stroke: "#999999",
          "stroke-width": 2,
        }),
      ],
    ),
  ]);
}

function colorbar(frame: Frame, vmax: number): string[] {
  const barLeft = frame.left + frame.width + 25;
  const barWidth = 18;
  const steps = 64;
  const parts: string[] = [];
  for (let i = 0; i < steps; i += 1) {
    const t0 = i / steps;
    const t1 = (i + 1) / steps;
    const yTop = frame.top + frame.height * (1 - t1);
    parts.push(
      tag("rect", {
        x: barLeft,
        y: yTop,
        width: barWidth,
        // slight overlap hides hairline seams between strips
        height: frame.height / steps + 0.5,
        fill: viridis((t0 + t1) / 2),
      }),
    );
  }
  parts.push(
    tag("rect", {
      x: barLeft,
      y: frame.top,
      width: barWidth,
      height: frame.height,
      fill: "none",
      stroke: "#222222",
      "stroke-width": 1,
    }),
  );
  for (const t of [0, 0.5, 1]) {
    const y = frame.top + frame.height * (1 - t);
    parts.push(
      text(barLeft + barWidth + 6, y + 4, fmt(vmax * t), { "font-size": 11 }),
    );
  }
  parts.push(
    text(barLeft + barWidth + 6, frame.top - 10, "E_N", { "font-size": 12 }),
  );
  return parts;
}

export function renderHeatmap(table: SweepTable): string {
  if (table.axes.length !== 2) {
    throw new CsvFormatError(
      `heatmap needs a 2-D sweep, this file has ${table.axes.length} axis`,
    );
  }
  const [axis1, axis2] = [table.axes[0]!, table.axes[1]!];
  const n1 = axis1.points;
  const n2 = axis2.points;
  const cellW = CELL_TARGET / n1;
  const cellH = CELL_TARGET / n2;
  const frame: Frame = {
    left: MARGIN.left,
    top: MARGIN.top,
    width: cellW * n1,
    height: cellH * n2,
  };
  const width = MARGIN.left + frame.width + MARGIN.right;
  const height = MARGIN.top + frame.height + MARGIN.bottom;

  let vmax = 0;
  for (let k = 0; k < table.values.length; k += 1) {
    const v = table.values[k]!;
    if (table.stable[k] && Number.isFinite(v) && v > vmax) {
      vmax = v;
    }
  }

  const cells: string[] = [];
  for (let k = 0; k < table.values.length; k += 1) {
    const i1 = k % n1;
    const i2 = Math.floor(k / n1);
    const x = frame.left + i1 * cellW;
    const y = frame.top + (n2 - 1 - i2) * cellH;
    const isStable = table.stable[k]!;
    const fill = isStable
      ? viridis(normalize(table.values[k]!, vmax))
      : "url(#hatch)";
    cells.push(
      tag("rect", {
        x,
        y,
        // slight overlap hides hairline seams between cells
        width: cellW + 0.5,
        height: cellH + 0.5,
        fill,
        ...(isStable ? {} : { class: "unstable" }),
      }),
    );
  }

  const decorations: string[] = [frameBox(frame)];
  const tickCount = Math.min(5, n1);
  for (const value of ticks(axis1.start, axis1.stop, tickCount)) {
    const x =
      frame.left +
      ((value - axis1.start) / (axis1.stop - axis1.start)) * frame.width;
    decorations.push(
      tag("line", {
        x1: x,
        y1: frame.top + frame.height,
        x2: x,
        y2: frame.top + frame.height + 5,
        stroke: "#222222",
        "stroke-width": 1,
      }),
      text(x, frame.top + frame.height + 18, fmt(value), {
        "text-anchor": "middle",
        "font-size": 11,
      }),
    );
  }
  for (const value of ticks(axis2.start, axis2.stop, Math.min(5, n2))) {
    const y =
      frame.top +
      frame.height -
      ((value - axis2.start) / (axis2.stop - axis2.start)) * frame.height;
    decorations.push(
      tag("line", {
        x1: frame.left - 5,
        y1: y,
        x2: frame.left,
        y2: y,
        stroke: "#222222",
        "stroke-width": 1,
      }),
      text(frame.left - 8, y + 4, fmt(value), {
        "text-anchor": "end",
        "font-size": 11,
      }),
    );
  }
  decorations.push(
    text(frame.left + frame.width / 2, height - 15, table.columns[0]!, {
      "text-anchor": "middle",
    }),
    text(18, frame.top + frame.height / 2, table.columns[1]!, {
      "text-anchor": "middle",
      transform: `rotate(-90 18 ${fmt(frame.top + frame.height / 2)})`,
    }),
    text(frame.left + frame.width / 2, 25, `magnonsim ${table.command}`, {
      "text-anchor": "middle",
      "font-size": 14,
    }),
  );

  return svgDocument(width, height, [
    hatchPattern(),
    ...cells,
    ...decorations,
    ...colorbar(frame, vmax),
  ]);
}

export function runCli(argv: string[]): number {
  let inputPath: string;
  let outputPath: string;
  try {
    const { values } = parseArgs({
      args: argv,
      options: {
        input: { type: "string" },
        output: { type: "string" },
      },
      allowPositionals: false,
    });
    if (!values.input || !values.output) {
      throw new Error("both --input and --output are required");
    }
    inputPath = values.input;
    outputPath = values.output;
  } catch (error) {
    process.stderr.write(`usage: heatmap --input sweep.csv --output out.svg\n`);
    process.stderr.write(`${(error as Error).message}\n`);
    return 1;
  }
  try {
    const table = parseSweepCsv(readFileSync(inputPath, "utf-8"));
    writeFileSync(outputPath, renderHeatmap(table), "utf-8");
  } catch (error) {
    process.stderr.write(`${(error as Error).message}\n`);
    return 1;
  }
  return 0;
}

if (
  typeof process.argv[1] === "string" &&
  import.meta.url === pathToFileURL(process.argv[1]).href
) {
  process.exit(runCli(process.argv.slice(2)));
}
