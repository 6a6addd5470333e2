/**
 * Minimal deterministic SVG assembly: plain string building with fixed
 * attribute order and fixed-precision coordinates, so identical inputs
 * produce byte-identical files.
 */

/** Fixed-precision coordinate/label formatting (trailing zeros trimmed). */
export function fmt(value: number): string {
  if (!Number.isFinite(value)) {
    return "0";
  }
  const rounded = Number(value.toPrecision(8));
  return String(rounded);
}

export function escapeText(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function tag(
  name: string,
  attrs: Record<string, string | number>,
  children?: string[],
): string {
  const parts = Object.entries(attrs).map(
    ([key, value]) => `${key}="${typeof value === "number" ? fmt(value) : value}"`,
  );
  const open = parts.length > 0 ? `<${name} ${parts.join(" ")}` : `<${name}`;
  if (children === undefined || children.length === 0) {
    return `${open}/>`;
  }
  return `${open}>${children.join("")}</${name}>`;
}

export function text(
  x: number,
  y: number,
  content: string,
  attrs: Record<string, string | number> = {},
): string {
  return tag(
    "text",
    {
      x,
      y,
      "font-family": "Helvetica, Arial, sans-serif",
      "font-size": 12,
      fill: "#222222",
      ...attrs,
    },
    [escapeText(content)],
  );
}

export function document(
  width: number,
  height: number,
  children: string[],
): string {
  const body = [
    tag("rect", { x: 0, y: 0, width, height, fill: "#ffffff" }),
    ...children,
  ];
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}">` +
    body.join("") +
    "</svg>\n"
  );
}

export interface Frame {
  left: number;
  top: number;
  width: number;
  height: number;
}

/** Linear data-to-pixel map along x (data increases rightward). */
export function xScale(frame: Frame, min: number, max: number) {
  const span = max - min;
  return (value: number) =>
    frame.left + (span === 0 ? 0.5 : (value - min) / span) * frame.width;
}

/** Linear data-to-pixel map along y (data increases upward). */
export function yScale(frame: Frame, min: number, max: number) {
  const span = max - min;
  return (value: number) =>
    frame.top + frame.height - (span === 0 ? 0.5 : (value - min) / span) * frame.height;
}

/** Evenly spaced tick positions including both endpoints. */
export function ticks(min: number, max: number, count: number): number[] {
  const result: number[] = [];
  for (let i = 0; i < count; i += 1) {
    result.push(min + ((max - min) * i) / (count - 1));
  }
  return result;
}

export function frameBox(frame: Frame): string {
  return tag("rect", {
    x: frame.left,
    y: frame.top,
    width: frame.width,
    height: frame.height,
    fill: "none",
    stroke: "#222222",
    "stroke-width": 1,
  });
}
