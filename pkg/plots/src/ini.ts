import { readFileSync } from "fs";

export type IniData = Record<string, Record<string, string>>;

/** Minimal INI reader for the run summaries and manifests. */
export function readIni(path: string): IniData {
  const data: IniData = {};
  let current: Record<string, string> | null = null;
  for (const rawLine of readFileSync(path, "utf8").split("\n")) {
    const line = rawLine.trim();
    if (line.length === 0 || line.startsWith("#") || line.startsWith(";")) continue;
    if (line.startsWith("[") && line.endsWith("]")) {
      current = {};
      data[line.slice(1, -1)] = current;
      continue;
    }
    const eq = line.indexOf("=");
    if (eq < 0 || current === null) {
      throw new Error(`${path}: malformed INI line: ${line}`);
    }
    current[line.slice(0, eq).trim()] = line.slice(eq + 1).trim();
  }
  return data;
}

/** The slope recorded by the sweep, from summary.ini's [result*] section. */
export function summarySlope(path: string): number {
  const data = readIni(path);
  for (const [name, body] of Object.entries(data)) {
    if (name.startsWith("result") && "slope" in body) {
      const value = Number(body["slope"]);
      if (!Number.isFinite(value)) throw new Error(`${path}: slope '${body["slope"]}' is not a number`);
      return value;
    }
  }
  throw new Error(`${path}: no [result] section with a slope`);
}
