/**
 * Line-plot renderer for 1-D sweep CSVs: one curve per input file over
 * a shared x axis, with a legend.  Unstable or NaN points break the
 * curve (blank gaps) rather than plotting a value.
 *
 * Usage: node dist/lines.js --input a.csv --input b.csv --output out.svg
 *        [--label NAME ...]  (labels pair with inputs in order)
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import {
  CsvFormatError,
  isDoubleDrive,
  parseSweepCsv,
  type SweepTable,
} from "./csv.js";
import {
  document as svgDocument,
  fmt,
  frameBox,
  tag,
  text,
  ticks,
  type Frame,
  xScale,
  yScale,
} from "./svg.js";

const MARGIN = { left: 75, right: 30, top: 45, bottom: 60 };
const PLOT_W = 520;
const PLOT_H = 360;

const CURVE_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];
const CURVE_DASHES = ["", "7 4", "2 3", "7 4 2 4", "1 3"];

export function defaultLabel(table: SweepTable, index: number): string {
  return isDoubleDrive(table) ? "double drive" : "single drive";
}

function curveSegments(table: SweepTable): number[][] {
  /* contiguous runs of plottable points, split at unstable/NaN entries */
  const segments: number[][] = [];
  let current: number[] = [];
  for (let k = 0; k < table.values.length; k += 1) {
    if (table.stable[k] && Number.isFinite(table.values[k]!)) {
      current.push(k);
    } else if (current.length > 0) {
      segments.push(current);
      current = [];
    }
  }
  if (current.length > 0) {
    segments.push(current);
  }
  return segments;
}

export function renderLines(tables: SweepTable[], labels?: string[]): string {
  if (tables.length === 0) {
    throw new CsvFormatError("no input tables to plot");
  }
  for (const table of tables) {
    if (table.axes.length !== 1) {
      throw new CsvFormatError(
        `line plot needs 1-D sweeps, an input has ${table.axes.length} axes`,
      );
    }
  }
  const reference = tables[0]!.axes[0]!;
  for (const table of tables.slice(1)) {
    const axis = table.axes[0]!;
    if (axis.path !== reference.path || axis.unit !== reference.unit) {
      throw new CsvFormatError(
        `inputs sweep different parameters: ${axis.path}[${axis.unit}] vs ` +
          `${reference.path}[${reference.unit}]`,
      );
    }
  }
  const curveLabels = tables.map(
    (table, i) => labels?.[i] ?? defaultLabel(table, i),
  );

  const frame: Frame = {
    left: MARGIN.left,
    top: MARGIN.top,
    width: PLOT_W,
    height: PLOT_H,
  };
  const width = MARGIN.left + PLOT_W + MARGIN.right;
  const height = MARGIN.top + PLOT_H + MARGIN.bottom;

  const xMin = Math.min(...tables.map((t) => Math.min(t.axes[0]!.start, t.axes[0]!.stop)));
  const xMax = Math.max(...tables.map((t) => Math.max(t.axes[0]!.start, t.axes[0]!.stop)));
  let yMax = 0;
  for (const table of tables) {
    for (let k = 0; k < table.values.length; k += 1) {
      const v = table.values[k]!;
      if (table.stable[k] && Number.isFinite(v) && v > yMax) {
        yMax = v;
      }
    }
  }
  const yTop = yMax > 0 ? 1.05 * yMax : 1;
  const sx = xScale(frame, xMin, xMax);
  const sy = yScale(frame, 0, yTop);

  const curves: string[] = [];
  tables.forEach((table, i) => {
    const color = CURVE_COLORS[i % CURVE_COLORS.length]!;
    const dash = CURVE_DASHES[i % CURVE_DASHES.length]!;
    const polylines = curveSegments(table).map((segment) => {
      const pts = segment
        .map(
          (k) => `${fmt(sx(table.axisValues[0]![k]!))},${fmt(sy(table.values[k]!))}`,
        )
        .join(" ");
      return tag("polyline", {
        points: pts,
        fill: "none",
        stroke: color,
        "stroke-width": 2,
        ...(dash === "" ? {} : { "stroke-dasharray": dash }),
      });
    });
    curves.push(tag("g", { class: `curve curve-${i}` }, polylines));
  });

  const decorations: string[] = [frameBox(frame)];
  for (const value of ticks(xMin, xMax, 6)) {
    const x = sx(value);
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
  for (const value of ticks(0, yTop, 5)) {
    const y = sy(value);
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
    text(frame.left + frame.width / 2, height - 15, tables[0]!.columns[0]!, {
      "text-anchor": "middle",
    }),
    text(18, frame.top + frame.height / 2, "E_N", {
      "text-anchor": "middle",
      transform: `rotate(-90 18 ${fmt(frame.top + frame.height / 2)})`,
    }),
    text(
      frame.left + frame.width / 2,
      25,
      `magnonsim ${tables[0]!.command}`,
      { "text-anchor": "middle", "font-size": 14 },
    ),
  );

  const legend: string[] = [];
  curveLabels.forEach((label, i) => {
    const y = frame.top + 16 + i * 18;
    const x = frame.left + frame.width - 150;
    const dash = CURVE_DASHES[i % CURVE_DASHES.length]!;
    legend.push(
      tag("line", {
        x1: x,
        y1: y - 4,
        x2: x + 28,
        y2: y - 4,
        stroke: CURVE_COLORS[i % CURVE_COLORS.length]!,
        "stroke-width": 2,
        ...(dash === "" ? {} : { "stroke-dasharray": dash }),
      }),
      text(x + 34, y, label, { "font-size": 11 }),
    );
  });

  return svgDocument(width, height, [...curves, ...decorations, ...legend]);
}

export function runCli(argv: string[]): number {
  let inputPaths: string[];
  let outputPath: string;
  let labels: string[] | undefined;
  try {
    const { values } = parseArgs({
      args: argv,
      options: {
        input: { type: "string", multiple: true },
        output: { type: "string" },
        label: { type: "string", multiple: true },
      },
      allowPositionals: false,
    });
    if (!values.input || values.input.length === 0 || !values.output) {
      throw new Error("at least one --input and exactly one --output are required");
    }
    inputPaths = values.input;
    outputPath = values.output;
    labels = values.label;
  } catch (error) {
    process.stderr.write(
      `usage: lines --input a.csv [--input b.csv ...] --output out.svg [--label NAME ...]\n`,
    );
    process.stderr.write(`${(error as Error).message}\n`);
    return 1;
  }
  try {
    const tables = inputPaths.map((p) => parseSweepCsv(readFileSync(p, "utf-8")));
    writeFileSync(outputPath, renderLines(tables, labels), "utf-8");
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
