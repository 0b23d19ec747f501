import { readCsv } from "./csv";
import { summarySlope } from "./ini";
import { makeDivergencePlot, makeEnergyPlot, makeRatePlot, makeWaveformPlot } from "./figures";
import { writeFigure } from "./output";

interface Args {
  input: string;
  output: string;
  summary?: string;
  title?: string;
}

function parseArgs(argv: string[], usage: string): Args {
  const positional: string[] = [];
  let summary: string | undefined;
  let title: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--summary") summary = argv[++i];
    else if (arg === "--title") title = argv[++i];
    else if (arg === "--help" || arg === "-h") throw new Error(usage);
    else positional.push(arg);
  }
  if (positional.length !== 2) throw new Error(usage);
  return { input: positional[0], output: positional[1], summary, title };
}

type Kind = "rate" | "divergence" | "waveform" | "energy";

/** Shared entry point: read the input CSV, render one figure kind, write it. */
export function runFigure(kind: Kind, argv: string[]): number {
  const usage = `usage: plot_${kind} <input.csv> <output.(svg|png)>${kind === "rate" ? " [--summary summary.ini]" : ""} [--title TEXT]`;
  try {
    const args = parseArgs(argv, usage);
    const columns = readCsv(args.input);
    let svg: string;
    if (kind === "rate") {
      const options = {
        title: args.title,
        summarySlope: args.summary !== undefined ? summarySlope(args.summary) : undefined,
      };
      svg = makeRatePlot(columns, args.input, options);
    } else if (kind === "divergence") {
      svg = makeDivergencePlot(columns, args.input, args.title);
    } else if (kind === "waveform") {
      svg = makeWaveformPlot(columns, args.input, args.title);
    } else {
      svg = makeEnergyPlot(columns, args.input, args.title);
    }
    writeFigure(svg, args.output);
    console.log(`wrote ${args.output}`);
    return 0;
  } catch (error) {
    console.error(String(error instanceof Error ? error.message : error));
    return 1;
  }
}
