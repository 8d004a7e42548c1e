#!/usr/bin/env node
/** figures <kind> --in <csv> --out <svg> */

import { readFileSync, writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { FigureKind, renderFigure } from "./figures.js";

export function main(argv: string[]): number {
  const args = yargs(argv)
    .command("$0 <kind>", "render one figure from a simulator CSV", (y) =>
      y.positional("kind", {
        choices: ["ber", "rate", "threshold"] as const,
        describe: "which figure to render",
        demandOption: true,
      }),
    )
    .option("in", { type: "string", demandOption: true, describe: "input CSV path" })
    .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
    .strict()
    .exitProcess(false)
    .parseSync();

  let csvText: string;
  try {
    csvText = readFileSync(args.in, "utf8");
  } catch (e) {
    console.error(`error: cannot read ${args.in}: ${(e as Error).message}`);
    return 2;
  }
  let svg: string;
  try {
    svg = renderFigure(args.kind as FigureKind, csvText);
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    return 2;
  }
  try {
    writeFileSync(args.out, svg);
  } catch (e) {
    console.error(`error: cannot write ${args.out}: ${(e as Error).message}`);
    return 3;
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  process.exit(main(hideBin(process.argv)));
}
