/** Least-squares slope and intercept of ln(y) against ln(x), by the same
 * mean-centered closed form the simulation harness uses, so recomputed and
 * recorded slopes agree to round-off. */
export function fitLogLog(xs: number[], ys: number[]): { slope: number; intercept: number } {
  if (xs.length !== ys.length || xs.length < 2) {
    throw new Error(`power-law fit needs matched x/y with >= 2 points, got ${xs.length}/${ys.length}`);
  }
  const lx = xs.map(Math.log);
  const ly = ys.map(Math.log);
  const mx = mean(lx);
  const my = mean(ly);
  let sxy = 0;
  let sxx = 0;
  for (let i = 0; i < lx.length; i++) {
    const cx = lx[i] - mx;
    sxy += cx * (ly[i] - my);
    sxx += cx * cx;
  }
  const slope = sxy / sxx;
  return { slope, intercept: my - slope * mx };
}

function mean(values: number[]): number {
  let total = 0;
  for (const v of values) total += v;
  return total / values.length;
}
