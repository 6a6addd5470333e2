/**
 * Reader for the sweep CSV contract emitted by the `magnonsim` CLI.
 *
 * Layout: a '#'-prefixed metadata preamble (`key = value` pairs holding
 * the fully resolved config and the axis descriptions), one header row
 * naming the columns as `path[unit]`, then one data row per grid point
 * with axis 1 varying fastest.  The last two columns are always E_N and
 * a 0/1 stability flag; unstable points carry E_N = nan.
 *
 * Parsing is strict: a file whose metadata block is missing, malformed,
 * or inconsistent with its own data rows is refused with a descriptive
 * error rather than rendered from guesses.
 */

export interface AxisMeta {
  path: string;
  unit: string;
  start: number;
  stop: number;
  points: number;
}

export interface SweepTable {
  /** CLI subcommand recorded on the first line, e.g. "sweep-detuning". */
  command: string;
  /** Raw metadata key/value pairs, including the embedded config. */
  meta: Record<string, string>;
  /** One or two swept axes, in column order. */
  axes: AxisMeta[];
  /** Column names from the header row. */
  columns: string[];
  /** Grid coordinates per axis, recovered from the data rows. */
  axisValues: number[][];
  /** E_N by flat grid index (axis 1 fastest); NaN where unstable. */
  values: number[];
  /** Stability flag by flat grid index. */
  stable: boolean[];
}

export class CsvFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "CsvFormatError";
  }
}

const CONFIG_KEYS_REQUIRED = [
  "config.cavity1.detuning",
  "config.cavity1.decay",
  "config.cavity2.detuning",
  "config.cavity2.decay",
  "config.magnon1.detuning",
  "config.magnon1.decay",
  "config.magnon2.detuning",
  "config.magnon2.decay",
  "config.g1",
  "config.g2",
  "config.J",
  "config.bath.temperature",
  "config.bath.carrier_frequency",
];

function parseNumber(raw: string, what: string): number {
  const trimmed = raw.trim();
  // Number() accepts "", which float fields never are; keep nan explicit.
  if (trimmed === "") {
    throw new CsvFormatError(`${what} is empty`);
  }
  if (/^-?nan$/i.test(trimmed)) {
    return Number.NaN;
  }
  const value = Number(trimmed);
  if (Number.isNaN(value)) {
    throw new CsvFormatError(`${what} is not a number: ${raw.trim()}`);
  }
  return value;
}

function requireFinite(raw: string, what: string): number {
  const value = parseNumber(raw, what);
  if (!Number.isFinite(value)) {
    throw new CsvFormatError(`${what} must be finite, got ${raw.trim()}`);
  }
  return value;
}

function parseAxisMeta(meta: Record<string, string>, index: number): AxisMeta {
  const prefix = `axis${index}`;
  for (const field of ["path", "unit", "start", "stop", "points"]) {
    if (!(`${prefix}.${field}` in meta)) {
      throw new CsvFormatError(`metadata is missing ${prefix}.${field}`);
    }
  }
  const points = requireFinite(meta[`${prefix}.points`]!, `${prefix}.points`);
  if (!Number.isInteger(points) || points < 2) {
    throw new CsvFormatError(
      `${prefix}.points must be an integer >= 2, got ${meta[`${prefix}.points`]}`,
    );
  }
  return {
    path: meta[`${prefix}.path`]!,
    unit: meta[`${prefix}.unit`]!,
    start: requireFinite(meta[`${prefix}.start`]!, `${prefix}.start`),
    stop: requireFinite(meta[`${prefix}.stop`]!, `${prefix}.stop`),
    points,
  };
}

function validateConfigMeta(meta: Record<string, string>): void {
  for (const key of CONFIG_KEYS_REQUIRED) {
    if (!(key in meta)) {
      throw new CsvFormatError(`metadata is missing ${key}`);
    }
    requireFinite(meta[key]!, key);
  }
  for (const drive of ["drive1", "drive2"]) {
    const hasR = `config.${drive}.r` in meta;
    const hasTheta = `config.${drive}.theta` in meta;
    if (hasR !== hasTheta) {
      throw new CsvFormatError(
        `metadata has an incomplete config.${drive} (need both r and theta)`,
      );
    }
    if (hasR) {
      requireFinite(meta[`config.${drive}.r`]!, `config.${drive}.r`);
      requireFinite(meta[`config.${drive}.theta`]!, `config.${drive}.theta`);
    }
  }
}

/** True when the embedded config has both squeezed drives present. */
export function isDoubleDrive(table: SweepTable): boolean {
  return "config.drive2.r" in table.meta;
}

export function parseSweepCsv(text: string): SweepTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError("file is empty");
  }
  const first = lines[0]!;
  const firstMatch = /^#\s*magnonsim\s+(\S+)\s*$/.exec(first);
  if (!firstMatch) {
    throw new CsvFormatError(
      `first line must be "# magnonsim <command>", got: ${first}`,
    );
  }
  const command = firstMatch[1]!;

  const meta: Record<string, string> = {};
  let headerIndex = -1;
  for (let i = 1; i < lines.length; i += 1) {
    const line = lines[i]!;
    if (!line.startsWith("#")) {
      headerIndex = i;
      break;
    }
    const body = line.slice(1).trim();
    const eq = body.indexOf("=");
    if (eq < 0) {
      throw new CsvFormatError(`metadata line has no "=": ${line}`);
    }
    const key = body.slice(0, eq).trim();
    const value = body.slice(eq + 1).trim();
    if (key === "") {
      throw new CsvFormatError(`metadata line has an empty key: ${line}`);
    }
    meta[key] = value;
  }
  if (headerIndex < 0) {
    throw new CsvFormatError("no header row after the metadata preamble");
  }

  if (!("format" in meta)) {
    throw new CsvFormatError("metadata is missing format");
  }
  if (meta["format"] !== "1") {
    throw new CsvFormatError(`unsupported format ${meta["format"]} (expected 1)`);
  }
  validateConfigMeta(meta);

  const axes: AxisMeta[] = [parseAxisMeta(meta, 1)];
  if ("axis2.path" in meta) {
    axes.push(parseAxisMeta(meta, 2));
  }

  const columns = lines[headerIndex]!.split(",").map((c) => c.trim());
  const expectedColumns = axes.length + 2;
  if (columns.length !== expectedColumns) {
    throw new CsvFormatError(
      `header has ${columns.length} columns, expected ${expectedColumns} ` +
        `(${axes.length} axis column(s) + E_N + stable)`,
    );
  }
  axes.forEach((axis, i) => {
    const expected = `${axis.path}[${axis.unit}]`;
    if (columns[i] !== expected) {
      throw new CsvFormatError(
        `column ${i + 1} is ${columns[i]}, expected ${expected}`,
      );
    }
  });
  if (columns[axes.length] !== "E_N" || columns[axes.length + 1] !== "stable") {
    throw new CsvFormatError("last two columns must be E_N and stable");
  }

  const dataLines = lines.slice(headerIndex + 1);
  const total = axes.reduce((acc, axis) => acc * axis.points, 1);
  if (dataLines.length !== total) {
    throw new CsvFormatError(
      `expected ${total} data rows for the declared grid, got ${dataLines.length}`,
    );
  }

  const n1 = axes[0]!.points;
  const axisValues: number[][] = axes.map((axis) => new Array<number>(axis.points));
  const values = new Array<number>(total);
  const stable = new Array<boolean>(total);

  for (let k = 0; k < total; k += 1) {
    const cells = dataLines[k]!.split(",");
    if (cells.length !== expectedColumns) {
      throw new CsvFormatError(
        `row ${k + 1} has ${cells.length} fields, expected ${expectedColumns}`,
      );
    }
    const gridIndex = [k % n1, Math.floor(k / n1)];
    for (let a = 0; a < axes.length; a += 1) {
      const value = requireFinite(cells[a]!, `row ${k + 1} ${axes[a]!.path}`);
      const idx = gridIndex[a]!;
      const seen = axisValues[a]![idx];
      if (seen === undefined) {
        axisValues[a]![idx] = value;
      } else if (seen !== value) {
        throw new CsvFormatError(
          `non-rectangular grid: row ${k + 1} has ${axes[a]!.path} = ${value}, ` +
            `but grid position ${idx} was previously ${seen}`,
        );
      }
    }
    values[k] = parseNumber(cells[axes.length]!, `row ${k + 1} E_N`);
    const flag = cells[axes.length + 1]!.trim();
    if (flag !== "0" && flag !== "1") {
      throw new CsvFormatError(`row ${k + 1} stable flag must be 0 or 1, got ${flag}`);
    }
    stable[k] = flag === "1";
  }

  return { command, meta, axes, columns, axisValues, values, stable };
}
