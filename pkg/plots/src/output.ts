import { mkdirSync, writeFileSync } from "fs";
import { dirname, extname } from "path";

/** Write an SVG scene to disk; `.png` paths are rasterized with resvg. */
export function writeFigure(svg: string, outPath: string): void {
  mkdirSync(dirname(outPath) || ".", { recursive: true });
  if (extname(outPath).toLowerCase() === ".png") {
    // eslint-disable-next-line @typescript-eslint/no-var-requires
    const { Resvg } = require("@resvg/resvg-js");
    const png = new Resvg(svg, { fitTo: { mode: "width", value: 1440 } }).render().asPng();
    writeFileSync(outPath, png);
    return;
  }
  writeFileSync(outPath, svg, "utf8");
}
