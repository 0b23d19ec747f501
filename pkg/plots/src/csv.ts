import { readFileSync } from "fs";

export type Columns = Record<string, number[]>;

/** Read a simple header+rows CSV of floats, as written by the simulation CLI. */
export function readCsv(path: string): Columns {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n").filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new Error(`${path}: empty CSV`);
  }
  const names = lines[0].split(",").map((name) => name.trim());
  const columns: Columns = {};
  for (const name of names) columns[name] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== names.length) {
      throw new Error(`${path}: row ${i + 1} has ${cells.length} cells, expected ${names.length}`);
    }
    for (let j = 0; j < names.length; j++) {
      const value = Number(cells[j]);
      if (!Number.isFinite(value)) {
        throw new Error(`${path}: row ${i + 1}, column '${names[j]}' is not a finite number`);
      }
      columns[names[j]].push(value);
    }
  }
  if (lines.length === 1) {
    throw new Error(`${path}: CSV has a header but no rows`);
  }
  return columns;
}

/** Fail with the missing column's name unless every required column is present. */
export function requireColumns(columns: Columns, required: string[], path: string): void {
  for (const name of required) {
    if (!(name in columns)) {
      throw new Error(`${path}: missing column '${name}'`);
    }
  }
}
