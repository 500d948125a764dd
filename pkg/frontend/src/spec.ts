/**
 * Plot specification: what to draw, from which files, to where. A spec
 * arrives either as a JSON file (--spec) or assembled from direct CLI
 * flags; both go through the same schema.
 */

import { readFileSync } from "node:fs";
import { z } from "zod";
import { InputError, SchemaError } from "./errors.js";

export const PLOT_KINDS = [
  "error_vs_ops",
  "speedup_vs_alpha",
  "ratio_bars",
  "init_ablation",
] as const;

export type PlotKind = (typeof PLOT_KINDS)[number];

const traceInput = z.object({
  label: z.string().min(1),
  path: z.string().min(1),
});

const plotSpecSchema = z
  .object({
    kind: z.enum(PLOT_KINDS),
    out: z.string().min(1),
    traces: z.array(traceInput).optional(),
    results: z.string().min(1).optional(),
    title: z.string().optional(),
    logY: z.boolean().optional(),
    baseline: z.string().optional(),
    accelerated: z.string().optional(),
  })
  .strict();

export type PlotSpec = z.infer<typeof plotSpecSchema>;

/** Which inputs each kind consumes. */
const NEEDS_TRACES: PlotKind[] = ["error_vs_ops", "init_ablation"];
const NEEDS_RESULTS: PlotKind[] = ["speedup_vs_alpha", "ratio_bars"];

export function validateSpec(raw: unknown): PlotSpec {
  const parsed = plotSpecSchema.safeParse(raw);
  if (!parsed.success) {
    const details = parsed.error.issues
      .map((i) => (i.path.length ? `${i.path.join(".")}: ${i.message}` : i.message))
      .join("; ");
    throw new SchemaError(`invalid plot spec: ${details}`);
  }
  const spec = parsed.data;
  if (NEEDS_TRACES.includes(spec.kind) && (spec.traces ?? []).length === 0) {
    throw new SchemaError(`invalid plot spec: kind ${spec.kind} needs at least one trace input`);
  }
  if (NEEDS_RESULTS.includes(spec.kind) && !spec.results) {
    throw new SchemaError(`invalid plot spec: kind ${spec.kind} needs a results file`);
  }
  const labels = (spec.traces ?? []).map((t) => t.label);
  const dup = labels.find((l, i) => labels.indexOf(l) !== i);
  if (dup !== undefined) {
    throw new SchemaError(`invalid plot spec: duplicate trace label ${JSON.stringify(dup)}`);
  }
  return spec;
}

export function loadSpecFile(path: string): PlotSpec {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new InputError(`cannot read ${path}: ${(err as Error).message}`);
  }
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(`${path}: not valid JSON: ${(err as Error).message}`);
  }
  return validateSpec(raw);
}

/** Per-kind default for the y-axis scale when the spec leaves it unset. */
export function resolveLogY(spec: PlotSpec): boolean {
  if (spec.logY !== undefined) return spec.logY;
  return spec.kind === "error_vs_ops" || spec.kind === "init_ablation";
}
