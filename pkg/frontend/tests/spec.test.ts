import { describe, expect, it } from "vitest";
import { InputError, SchemaError } from "../src/errors.js";
import { loadSpecFile, resolveLogY, validateSpec } from "../src/spec.js";
import { tempDir, writeTemp } from "./helpers.js";

describe("validateSpec", () => {
  it("accepts a trace-based spec", () => {
    const spec = validateSpec({
      kind: "error_vs_ops",
      out: "fig.svg",
      traces: [{ label: "appr", path: "a.csv" }],
    });
    expect(spec.kind).toBe("error_vs_ops");
  });

  it("accepts a results-based spec", () => {
    const spec = validateSpec({
      kind: "speedup_vs_alpha",
      out: "fig.svg",
      results: "results.csv",
      baseline: "locappr",
      accelerated: "aesp-locappr",
    });
    expect(spec.results).toBe("results.csv");
  });

  it("rejects unknown kinds naming the field", () => {
    expect(() => validateSpec({ kind: "pie", out: "f.svg" })).toThrow(/kind/);
  });

  it("rejects trace kinds without traces", () => {
    expect(() => validateSpec({ kind: "error_vs_ops", out: "f.svg" })).toThrow(
      /needs at least one trace/,
    );
    expect(() => validateSpec({ kind: "init_ablation", out: "f.svg", traces: [] })).toThrow(
      SchemaError,
    );
  });

  it("rejects results kinds without a results file", () => {
    expect(() => validateSpec({ kind: "speedup_vs_alpha", out: "f.svg" })).toThrow(
      /needs a results file/,
    );
    expect(() => validateSpec({ kind: "ratio_bars", out: "f.svg" })).toThrow(SchemaError);
  });

  it("rejects duplicate trace labels", () => {
    expect(() =>
      validateSpec({
        kind: "init_ablation",
        out: "f.svg",
        traces: [
          { label: "zero", path: "a.csv" },
          { label: "zero", path: "b.csv" },
        ],
      }),
    ).toThrow(/duplicate trace label "zero"/);
  });

  it("rejects unknown fields", () => {
    expect(() =>
      validateSpec({
        kind: "ratio_bars",
        out: "f.svg",
        results: "r.csv",
        colour: "red",
      }),
    ).toThrow(SchemaError);
  });
});

describe("loadSpecFile", () => {
  it("loads a valid JSON spec", () => {
    const dir = tempDir();
    const path = writeTemp(
      dir,
      "spec.json",
      JSON.stringify({ kind: "ratio_bars", out: "f.svg", results: "r.csv" }),
    );
    expect(loadSpecFile(path).kind).toBe("ratio_bars");
  });

  it("maps unreadable files to InputError and bad JSON to SchemaError", () => {
    expect(() => loadSpecFile("/nonexistent/spec.json")).toThrow(InputError);
    const dir = tempDir();
    const path = writeTemp(dir, "bad.json", "{not json");
    expect(() => loadSpecFile(path)).toThrow(SchemaError);
  });
});

describe("resolveLogY", () => {
  it("defaults by kind and respects explicit overrides", () => {
    const base = { out: "f.svg", traces: [{ label: "a", path: "a.csv" }], results: "r.csv" };
    expect(resolveLogY(validateSpec({ ...base, kind: "error_vs_ops" }))).toBe(true);
    expect(resolveLogY(validateSpec({ ...base, kind: "init_ablation" }))).toBe(true);
    expect(resolveLogY(validateSpec({ ...base, kind: "speedup_vs_alpha" }))).toBe(false);
    expect(resolveLogY(validateSpec({ ...base, kind: "error_vs_ops", logY: false }))).toBe(false);
    expect(resolveLogY(validateSpec({ ...base, kind: "speedup_vs_alpha", logY: true }))).toBe(true);
  });
});
