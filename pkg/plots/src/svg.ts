/** Small deterministic SVG scene builder: fixed canvas, explicit scales,
 * no randomness, so identical inputs render byte-identical figures. */

export interface Series {
  xs: number[];
  ys: number[];
  color: string;
  width?: number;
  dash?: string;
  label?: string;
}

export interface MarkerSet {
  xs: number[];
  ys: number[];
  color: string;
  radius?: number;
}

export interface PolygonSpec {
  points: Array<[number, number]>; // data coordinates
  color: string;
  label?: string;
}

export interface SceneSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  xLog?: boolean;
  yLog?: boolean;
  series?: Series[];
  markers?: MarkerSet[];
  polygons?: PolygonSpec[];
  annotations?: string[];
  rootAttrs?: Record<string, string>;
}

export const WIDTH = 720;
export const HEIGHT = 480;
const MARGIN = { left: 80, right: 24, top: 48, bottom: 56 };

export interface Scale {
  toPixel(value: number): number;
  ticks: number[];
}

function niceLinearTicks(lo: number, hi: number): number[] {
  if (lo === hi) {
    hi = lo + 1;
    lo = lo - 1;
  }
  const span = hi - lo;
  const rawStep = span / 5;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => span / c <= 6) ?? 10 * power;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  const eLo = Math.floor(Math.log10(lo) - 1e-12);
  const eHi = Math.ceil(Math.log10(hi) + 1e-12);
  const sparse = eHi - eLo > 4;
  for (let e = eLo; e <= eHi; e++) {
    for (const m of sparse ? [1] : [1, 2, 5]) {
      const v = m * Math.pow(10, e);
      if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) ticks.push(v);
    }
  }
  return ticks;
}

export function makeScale(values: number[], log: boolean, pixelLo: number, pixelHi: number): Scale {
  const finite = values.filter((v) => Number.isFinite(v) && (!log || v > 0));
  if (finite.length === 0) {
    throw new Error(log ? "no positive values for a log axis" : "no finite values to plot");
  }
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (log) {
    const pad = Math.pow(hi / lo, 0.05) || 2;
    lo /= pad;
    hi *= pad;
    const la = Math.log10(lo);
    const lb = Math.log10(hi);
    return {
      toPixel: (v) => pixelLo + ((Math.log10(v) - la) / (lb - la)) * (pixelHi - pixelLo),
      ticks: logTicks(lo, hi),
    };
  }
  const pad = (hi - lo || Math.abs(hi) || 1) * 0.05;
  lo -= pad;
  hi += pad;
  return {
    toPixel: (v) => pixelLo + ((v - lo) / (hi - lo)) * (pixelHi - pixelLo),
    ticks: niceLinearTicks(lo, hi),
  };
}

function fmtTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) {
    return value.toExponential(0).replace("e+", "e");
  }
  return String(Number(value.toPrecision(6)));
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function renderScene(spec: SceneSpec): string {
  const plotLeft = MARGIN.left;
  const plotRight = WIDTH - MARGIN.right;
  const plotTop = MARGIN.top;
  const plotBottom = HEIGHT - MARGIN.bottom;

  const xValues = (spec.series ?? []).flatMap((s) => s.xs)
    .concat((spec.markers ?? []).flatMap((m) => m.xs))
    .concat((spec.polygons ?? []).flatMap((p) => p.points.map((q) => q[0])));
  const yValues = (spec.series ?? []).flatMap((s) => s.ys)
    .concat((spec.markers ?? []).flatMap((m) => m.ys))
    .concat((spec.polygons ?? []).flatMap((p) => p.points.map((q) => q[1])));

  const xScale = makeScale(xValues, !!spec.xLog, plotLeft, plotRight);
  const yScale = makeScale(yValues, !!spec.yLog, plotBottom, plotTop);
  const px = (v: number) => xScale.toPixel(v).toFixed(2);
  const py = (v: number) => yScale.toPixel(v).toFixed(2);

  const parts: string[] = [];
  const attrs = Object.entries(spec.rootAttrs ?? {})
    .map(([k, v]) => ` ${k}="${escapeXml(v)}"`)
    .join("");
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif"${attrs}>`,
  );
  parts.push(`<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  // grid and ticks
  for (const t of xScale.ticks) {
    const x = px(t);
    parts.push(`<line x1="${x}" y1="${plotTop}" x2="${x}" y2="${plotBottom}" stroke="#dddddd" stroke-width="1"/>`);
    parts.push(
      `<text x="${x}" y="${plotBottom + 18}" font-size="12" fill="#333333" text-anchor="middle">${fmtTick(t)}</text>`,
    );
  }
  for (const t of yScale.ticks) {
    const y = py(t);
    parts.push(`<line x1="${plotLeft}" y1="${y}" x2="${plotRight}" y2="${y}" stroke="#dddddd" stroke-width="1"/>`);
    parts.push(
      `<text x="${plotLeft - 8}" y="${y}" font-size="12" fill="#333333" text-anchor="end" dominant-baseline="middle">${fmtTick(t)}</text>`,
    );
  }
  parts.push(
    `<rect x="${plotLeft}" y="${plotTop}" width="${plotRight - plotLeft}" height="${plotBottom - plotTop}" fill="none" stroke="#333333" stroke-width="1"/>`,
  );

  for (const polygon of spec.polygons ?? []) {
    const pts = polygon.points.map(([x, y]) => `${px(x)},${py(y)}`).join(" ");
    parts.push(`<polygon points="${pts}" fill="none" stroke="${polygon.color}" stroke-width="1.2"/>`);
    if (polygon.label) {
      const [lx, ly] = polygon.points[polygon.points.length - 1];
      parts.push(
        `<text x="${px(lx)}" y="${py(ly)}" dx="6" font-size="12" fill="${polygon.color}">${escapeXml(polygon.label)}</text>`,
      );
    }
  }

  for (const series of spec.series ?? []) {
    const pts = series.xs.map((x, i) => `${px(x)},${py(series.ys[i])}`).join(" ");
    const dash = series.dash ? ` stroke-dasharray="${series.dash}"` : "";
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${series.color}" stroke-width="${series.width ?? 1.8}"${dash}/>`,
    );
  }

  for (const markers of spec.markers ?? []) {
    for (let i = 0; i < markers.xs.length; i++) {
      parts.push(
        `<circle cx="${px(markers.xs[i])}" cy="${py(markers.ys[i])}" r="${markers.radius ?? 4}" fill="${markers.color}"/>`,
      );
    }
  }

  // legend for labeled series
  const labeled = (spec.series ?? []).filter((s) => s.label);
  labeled.forEach((series, i) => {
    const y = plotTop + 16 + 18 * i;
    const dash = series.dash ? ` stroke-dasharray="${series.dash}"` : "";
    parts.push(
      `<line x1="${plotRight - 150}" y1="${y}" x2="${plotRight - 120}" y2="${y}" stroke="${series.color}" stroke-width="2"${dash}/>`,
    );
    parts.push(
      `<text x="${plotRight - 112}" y="${y + 4}" font-size="12" fill="#333333">${escapeXml(series.label!)}</text>`,
    );
  });

  parts.push(
    `<text x="${(plotLeft + plotRight) / 2}" y="24" font-size="16" fill="#111111" text-anchor="middle">${escapeXml(spec.title)}</text>`,
  );
  (spec.annotations ?? []).forEach((note, i) => {
    parts.push(
      `<text x="${plotLeft + 12}" y="${plotTop + 20 + 18 * i}" font-size="13" fill="#111111" class="annotation">${escapeXml(note)}</text>`,
    );
  });
  parts.push(
    `<text x="${(plotLeft + plotRight) / 2}" y="${HEIGHT - 14}" font-size="13" fill="#333333" text-anchor="middle">${escapeXml(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text x="20" y="${(plotTop + plotBottom) / 2}" font-size="13" fill="#333333" text-anchor="middle" transform="rotate(-90 20 ${(plotTop + plotBottom) / 2})">${escapeXml(spec.yLabel)}</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n");
}
