import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

export const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixtureText(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

/** Remove every line matching the pattern. */
export function dropLines(text: string, pattern: RegExp): string {
  return text
    .split("\n")
    .filter((line) => !pattern.test(line))
    .join("\n");
}

/** Rewrite each line matching the pattern. */
export function mapLines(
  text: string,
  pattern: RegExp,
  replace: (line: string) => string,
): string {
  return text
    .split("\n")
    .map((line) => (pattern.test(line) ? replace(line) : line))
    .join("\n");
}
