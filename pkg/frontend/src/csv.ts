/**
 * Readers for the two CSV formats the solver emits: per-sweep trace files
 * and bench results tables. Both validate the header and name every
 * missing column in the error message.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";
import { InputError, SchemaError } from "./errors.js";

export const TRACE_COLUMNS = [
  "t", "k", "vol_S", "gamma", "grad_l1_scaled", "ops_cum", "err_inf",
] as const;

export const RESULTS_COLUMNS = [
  "method", "graph", "alpha", "eps", "source",
  "ops_total", "T_used", "R", "err_inf", "wall_ms",
] as const;

export interface TraceRow {
  t: number;
  k: number;
  vol_S: number;
  gamma: number;
  grad_l1_scaled: number;
  ops_cum: number;
  err_inf: number | null;
}

export interface ResultsRow {
  method: string;
  graph: string;
  alpha: number;
  eps: number;
  source: number;
  ops_total: number;
  T_used: number;
  R: number;
  err_inf: number | null;
  wall_ms: number;
}

function readText(path: string): string {
  try {
    return readFileSync(path, "utf8");
  } catch (err) {
    throw new InputError(`cannot read ${path}: ${(err as Error).message}`);
  }
}

function parseRows(path: string, required: readonly string[]): Record<string, string>[] {
  const parsed = Papa.parse<Record<string, string>>(readText(path), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`${path}: ${first.message} (row ${first.row ?? "?"})`);
  }
  const fields = parsed.meta.fields ?? [];
  const missing = required.filter((c) => !fields.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `${path}: missing required column(s) ${missing.join(", ")}; found ${fields.join(", ")}`,
    );
  }
  return parsed.data;
}

function num(path: string, row: number, col: string, raw: string): number {
  const v = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(v)) {
    throw new SchemaError(`${path}: bad value for ${col} in data row ${row}: ${JSON.stringify(raw)}`);
  }
  return v;
}

function numOrNull(path: string, row: number, col: string, raw: string): number | null {
  if (raw === undefined || raw.trim() === "") return null;
  return num(path, row, col, raw);
}

export function loadTraceCsv(path: string): TraceRow[] {
  return parseRows(path, TRACE_COLUMNS).map((r, i) => ({
    t: num(path, i + 1, "t", r.t),
    k: num(path, i + 1, "k", r.k),
    vol_S: num(path, i + 1, "vol_S", r.vol_S),
    gamma: num(path, i + 1, "gamma", r.gamma),
    grad_l1_scaled: num(path, i + 1, "grad_l1_scaled", r.grad_l1_scaled),
    ops_cum: num(path, i + 1, "ops_cum", r.ops_cum),
    err_inf: numOrNull(path, i + 1, "err_inf", r.err_inf),
  }));
}

export function loadResultsCsv(path: string): ResultsRow[] {
  const rows = parseRows(path, RESULTS_COLUMNS).map((r, i) => ({
    method: r.method,
    graph: r.graph,
    alpha: num(path, i + 1, "alpha", r.alpha),
    eps: num(path, i + 1, "eps", r.eps),
    source: num(path, i + 1, "source", r.source),
    ops_total: num(path, i + 1, "ops_total", r.ops_total),
    T_used: num(path, i + 1, "T_used", r.T_used),
    R: num(path, i + 1, "R", r.R),
    err_inf: numOrNull(path, i + 1, "err_inf", r.err_inf),
    wall_ms: num(path, i + 1, "wall_ms", r.wall_ms),
  }));
  if (rows.length === 0) {
    throw new SchemaError(`${path}: no data rows`);
  }
  return rows;
}
