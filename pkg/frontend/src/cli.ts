#!/usr/bin/env node
/**
 * Render SVG figures from solver output files.
 *
 * Usage:
 *   locppr-plots --spec figure.json
 *   locppr-plots --kind error_vs_ops --trace appr=appr.csv --trace aesp=aesp.csv --out fig.svg
 *   locppr-plots --kind init_ablation --trace zero=z.csv --trace momentum_y=m.csv --out fig.svg
 *   locppr-plots --kind speedup_vs_alpha --results results.csv --out fig.svg
 *   locppr-plots --kind ratio_bars --results results.csv [--trace g=g.csv ...] --out fig.svg
 *
 * Flags mirror the spec fields: --title, --log-y / --linear-y override the
 * per-kind default scale, --baseline / --accelerated pick the method pair
 * for speedup_vs_alpha.
 *
 * Exit codes: 0 ok, 2 missing/unreadable file, 3 schema mismatch
 * (messages name the missing columns), 5 bad arguments.
 */

import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";
import { ArgError, PlotsError } from "./errors.js";
import { PlotSpec, loadSpecFile, validateSpec } from "./spec.js";
import { renderToFile } from "./render.js";

const USAGE = `usage: locppr-plots --spec FILE.json
       locppr-plots --kind KIND [--trace LABEL=PATH ...] [--results PATH]
                    --out FILE.svg [--title TEXT] [--log-y | --linear-y]
                    [--baseline METHOD --accelerated METHOD]

kinds: error_vs_ops, speedup_vs_alpha, ratio_bars, init_ablation`;

function specFromFlags(values: {
  kind?: string;
  trace?: string[];
  results?: string;
  out?: string;
  title?: string;
  "log-y"?: boolean;
  "linear-y"?: boolean;
  baseline?: string;
  accelerated?: string;
}): PlotSpec {
  if (!values.kind) throw new ArgError("either --spec or --kind is required");
  if (!values.out) throw new ArgError("--out is required");
  if (values["log-y"] && values["linear-y"]) {
    throw new ArgError("--log-y and --linear-y are mutually exclusive");
  }
  const traces = (values.trace ?? []).map((arg) => {
    const at = arg.indexOf("=");
    if (at <= 0) throw new ArgError(`--trace expects LABEL=PATH, got ${JSON.stringify(arg)}`);
    return { label: arg.slice(0, at), path: arg.slice(at + 1) };
  });
  return validateSpec({
    kind: values.kind,
    out: values.out,
    traces: traces.length > 0 ? traces : undefined,
    results: values.results,
    title: values.title,
    logY: values["log-y"] ? true : values["linear-y"] ? false : undefined,
    baseline: values.baseline,
    accelerated: values.accelerated,
  });
}

export function main(argv: string[]): number {
  try {
    let parsed;
    try {
      parsed = parseArgs({
        args: argv,
        options: {
          spec: { type: "string" },
          kind: { type: "string" },
          trace: { type: "string", multiple: true },
          results: { type: "string" },
          out: { type: "string" },
          title: { type: "string" },
          "log-y": { type: "boolean" },
          "linear-y": { type: "boolean" },
          baseline: { type: "string" },
          accelerated: { type: "string" },
          help: { type: "boolean", short: "h" },
        },
        allowPositionals: false,
      });
    } catch (err) {
      throw new ArgError((err as Error).message);
    }
    if (parsed.values.help) {
      console.log(USAGE);
      return 0;
    }
    if (parsed.values.spec && parsed.values.kind) {
      throw new ArgError("--spec and --kind are mutually exclusive");
    }
    const spec = parsed.values.spec
      ? loadSpecFile(parsed.values.spec)
      : specFromFlags(parsed.values);
    renderToFile(spec);
    console.log(`wrote ${spec.out}`);
    return 0;
  } catch (err) {
    if (err instanceof PlotsError) {
      console.error(`locppr-plots: ${err.message}`);
      return err.exitCode;
    }
    console.error(`locppr-plots: ${(err as Error).stack ?? err}`);
    return 1;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
