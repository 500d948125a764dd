import { existsSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { main } from "../src/cli.js";
import { fixture, tempDir, writeTemp } from "./helpers.js";

let out: string[];
let err: string[];

beforeEach(() => {
  out = [];
  err = [];
  vi.spyOn(console, "log").mockImplementation((msg: string) => out.push(String(msg)));
  vi.spyOn(console, "error").mockImplementation((msg: string) => err.push(String(msg)));
});

afterEach(() => {
  vi.restoreAllMocks();
});

describe("cli main", () => {
  it("renders from a spec file", () => {
    const dir = tempDir();
    const target = join(dir, "fig.svg");
    const spec = writeTemp(
      dir,
      "spec.json",
      JSON.stringify({
        kind: "speedup_vs_alpha",
        out: target,
        results: fixture("results_speedup.csv"),
      }),
    );
    expect(main(["--spec", spec])).toBe(0);
    expect(existsSync(target)).toBe(true);
    expect(readFileSync(target, "utf8")).toContain("<svg ");
    expect(out.some((l) => l.includes("fig.svg"))).toBe(true);
  });

  it("renders from direct flags", () => {
    const dir = tempDir();
    const target = join(dir, "fig.svg");
    const code = main([
      "--kind", "error_vs_ops",
      "--trace", `appr=${fixture("trace_appr.csv")}`,
      "--trace", `aesp=${fixture("trace_aesp-locappr.csv")}`,
      "--out", target,
      "--title", "grid16",
    ]);
    expect(code).toBe(0);
    expect(readFileSync(target, "utf8")).toContain("grid16");
  });

  it("exits 2 on a missing input file", () => {
    const dir = tempDir();
    const code = main([
      "--kind", "init_ablation",
      "--trace", "zero=/nonexistent/z.csv",
      "--out", join(dir, "f.svg"),
    ]);
    expect(code).toBe(2);
    expect(err.join("\n")).toContain("/nonexistent/z.csv");
  });

  it("exits 3 on a schema mismatch, naming the columns", () => {
    const dir = tempDir();
    const bad = writeTemp(dir, "bad.csv", "method,graph\nappr,g\n");
    const code = main([
      "--kind", "speedup_vs_alpha",
      "--results", bad,
      "--out", join(dir, "f.svg"),
    ]);
    expect(code).toBe(3);
    expect(err.join("\n")).toContain("ops_total");
  });

  it("exits 3 when a trace lacks measured error values", () => {
    const dir = tempDir();
    const code = main([
      "--kind", "error_vs_ops",
      "--trace", `zero=${fixture("trace_init_zero.csv")}`,
      "--out", join(dir, "f.svg"),
    ]);
    expect(code).toBe(3);
    expect(err.join("\n")).toContain("err_inf");
  });

  it("exits 5 on bad arguments", () => {
    expect(main([])).toBe(5);
    expect(main(["--kind", "error_vs_ops"])).toBe(5);
    expect(main(["--bogus"])).toBe(5);
    expect(main(["--spec", "s.json", "--kind", "ratio_bars"])).toBe(5);
    expect(main(["--kind", "x", "--trace", "nolabel", "--out", "f.svg"])).toBe(5);
    const dir = tempDir();
    expect(
      main([
        "--kind", "error_vs_ops",
        "--trace", `a=${fixture("trace_appr.csv")}`,
        "--out", join(dir, "f.svg"),
        "--log-y", "--linear-y",
      ]),
    ).toBe(5);
  });

  it("exits 3 on an invalid spec file", () => {
    const dir = tempDir();
    const spec = writeTemp(dir, "spec.json", JSON.stringify({ kind: "pie", out: "f.svg" }));
    expect(main(["--spec", spec])).toBe(3);
    expect(err.join("\n")).toContain("kind");
  });

  it("prints usage for --help", () => {
    expect(main(["--help"])).toBe(0);
    expect(out.join("\n")).toContain("usage: locppr-plots");
  });
});
