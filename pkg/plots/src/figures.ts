import { Columns, requireColumns } from "./csv";
import { fitLogLog } from "./fit";
import { renderScene } from "./svg";

const SLOPE_CHECK_TOL = 1e-9;

function fmt17(value: number): string {
  return value.toPrecision(17);
}

function fmtOrder(value: number): string {
  return Number.isInteger(value) ? String(value) : String(Number(value.toPrecision(6)));
}

export interface RatePlotOptions {
  /** slope recorded in summary.ini; cross-checked against the recomputed fit */
  summarySlope?: number;
  title?: string;
}

/** Log-log rate figure: d(T) against delta, the fitted power law, reference
 * triangles for slopes 2 and 4, and the slope annotation.  The slope is
 * recomputed from the CSV columns and must agree with the recorded one. */
export function makeRatePlot(report: Columns, path: string, options: RatePlotOptions = {}): string {
  requireColumns(report, ["delta", "d_T", "predicted_rate", "slope", "residual", "linearity"], path);
  const deltas = report["delta"];
  const dT = report["d_T"];
  const { slope, intercept } = fitLogLog(deltas, dT);

  const recorded = report["slope"][0];
  if (Math.abs(slope - recorded) > SLOPE_CHECK_TOL) {
    throw new Error(
      `${path}: stale slope: recomputed ${fmt17(slope)} but CSV records ${fmt17(recorded)}`,
    );
  }
  if (options.summarySlope !== undefined && Math.abs(slope - options.summarySlope) > SLOPE_CHECK_TOL) {
    throw new Error(
      `${path}: stale summary: recomputed ${fmt17(slope)} but summary records ${fmt17(options.summarySlope)}`,
    );
  }

  const lo = Math.min(...deltas);
  const hi = Math.max(...deltas);
  const fitted = (x: number) => Math.exp(intercept + slope * Math.log(x));
  const predicted = report["predicted_rate"][0];

  // reference triangles anchored under the data, one decade tall per slope
  const yBase = Math.min(...dT) * 0.25;
  const triangle = (rate: number) => ({
    points: [
      [lo, yBase],
      [lo * 1.6, yBase],
      [lo * 1.6, yBase * Math.pow(1.6, rate)],
    ] as Array<[number, number]>,
    color: "#999999",
    label: String(rate),
  });

  const annotation = `slope = ${slope.toFixed(2)}${Number.isFinite(predicted) ? ` (predicted ${fmtOrder(predicted)})` : ""}`;
  return renderScene({
    title: options.title ?? "divergence rate in the kernel-scaling parameter",
    xLabel: "delta",
    yLabel: "||u1 - u2||_Hs at T",
    xLog: true,
    yLog: true,
    series: [{ xs: [lo, hi], ys: [fitted(lo), fitted(hi)], color: "#d62728", width: 1.6, label: "fit" }],
    markers: [{ xs: deltas, ys: dT, color: "#1f77b4" }],
    polygons: [triangle(2), triangle(4)],
    annotations: [annotation],
    rootAttrs: {
      "data-kind": "rate",
      "data-slope": fmt17(slope),
      "data-intercept": fmt17(intercept),
      "data-predicted": Number.isFinite(predicted) ? fmt17(predicted) : "nan",
    },
  });
}

/** Divergence history d(t) for one run pair; d(0) = 0 sits on the axis. */
export function makeDivergencePlot(curve: Columns, path: string, title?: string): string {
  requireColumns(curve, ["t", "d"], path);
  return renderScene({
    title: title ?? "solution divergence over time",
    xLabel: "t",
    yLabel: "||u1 - u2||_Hs",
    series: [{ xs: curve["t"], ys: curve["d"], color: "#1f77b4" }],
    markers: [{ xs: [curve["t"][0]], ys: [curve["d"][0]], color: "#d62728", radius: 3 }],
    rootAttrs: { "data-kind": "divergence", "data-d0": fmt17(curve["d"][0]) },
  });
}

/** Waveform snapshot u(x). */
export function makeWaveformPlot(field: Columns, path: string, title?: string): string {
  requireColumns(field, ["x", "u"], path);
  const u = field["u"];
  let peak = 0;
  for (let i = 1; i < u.length; i++) {
    if (u[i] > u[peak]) peak = i;
  }
  return renderScene({
    title: title ?? "waveform snapshot",
    xLabel: "x",
    yLabel: "u",
    series: [{ xs: field["x"], ys: u, color: "#1f77b4" }],
    rootAttrs: { "data-kind": "waveform", "data-peak-x": fmt17(field["x"][peak]) },
  });
}

/** Energy trace: E_s(t) with the norm and the sandwich envelopes
 * sqrt(c1/2)*||u|| and sqrt(c2/2)*||u|| built from the recorded columns. */
export function makeEnergyPlot(trace: Columns, path: string, title?: string): string {
  requireColumns(trace, ["t", "e_s", "h_s_norm", "c1", "c2"], path);
  const t = trace["t"];
  const norm = trace["h_s_norm"];
  const lower = norm.map((v, i) => Math.sqrt(trace["c1"][i] / 2) * v);
  const upper = norm.map((v, i) => Math.sqrt(trace["c2"][i] / 2) * v);
  return renderScene({
    title: title ?? "energy sandwich",
    xLabel: "t",
    yLabel: "energy",
    series: [
      { xs: t, ys: upper, color: "#999999", dash: "6 3", label: "sqrt(c2/2)||u||" },
      { xs: t, ys: trace["e_s"], color: "#d62728", width: 2, label: "E_s" },
      { xs: t, ys: lower, color: "#999999", dash: "2 3", label: "sqrt(c1/2)||u||" },
    ],
    rootAttrs: { "data-kind": "energy", "data-c1": fmt17(trace["c1"][0]), "data-c2": fmt17(trace["c2"][0]) },
  });
}
