import { describe, expect, it } from "vitest";
import { loadResultsCsv, loadTraceCsv } from "../src/csv.js";
import { SchemaError } from "../src/errors.js";
import {
  figureErrorVsOps, figureInitAblation, figureRatioBars, figureSpeedupVsAlpha,
  inferMethodPair, peakVolumeGammaRatio,
} from "../src/figures.js";
import { fmtTick } from "../src/svg.js";
import { fixture } from "./helpers.js";

function polylines(svg: string): { x: number; y: number }[][] {
  const out: { x: number; y: number }[][] = [];
  for (const m of svg.matchAll(/<polyline[^>]*points="([^"]+)"/g)) {
    out.push(
      m[1].split(" ").map((pt) => {
        const [x, y] = pt.split(",").map(Number);
        return { x, y };
      }),
    );
  }
  return out;
}

const apprTrace = { label: "appr", rows: loadTraceCsv(fixture("trace_appr.csv")) };
const aespTrace = { label: "aesp-locappr", rows: loadTraceCsv(fixture("trace_aesp-locappr.csv")) };

describe("figureErrorVsOps", () => {
  const svg = figureErrorVsOps([apprTrace, aespTrace], { logY: true });

  it("draws one line per trace with legend labels", () => {
    expect(polylines(svg)).toHaveLength(2);
    expect(svg).toContain(">appr<");
    expect(svg).toContain(">aesp-locappr<");
    expect(svg).toContain("cumulative operations");
    expect(svg).toContain("max error / degree");
  });

  it("renders a monotone error envelope", () => {
    for (const line of polylines(svg)) {
      for (let i = 1; i < line.length; i++) {
        expect(line[i].x).toBeGreaterThanOrEqual(line[i - 1].x);
        expect(line[i].y).toBeGreaterThanOrEqual(line[i - 1].y - 1e-9);
      }
    }
  });

  it("rejects traces without measured error, naming err_inf", () => {
    const bare = { label: "zero", rows: loadTraceCsv(fixture("trace_init_zero.csv")) };
    expect(() => figureErrorVsOps([bare], { logY: true })).toThrow(SchemaError);
    expect(() => figureErrorVsOps([bare], { logY: true })).toThrow(/err_inf.*"zero"|"zero".*err_inf/);
  });
});

describe("figureInitAblation", () => {
  it("draws one gradient line per warm-start mode", () => {
    const traces = ["zero", "x", "y"].map((mode) => ({
      label: mode,
      rows: loadTraceCsv(fixture(`trace_init_${mode}.csv`)),
    }));
    const svg = figureInitAblation(traces, { logY: true });
    expect(polylines(svg)).toHaveLength(3);
    expect(svg).toContain("scaled gradient l1 norm");
    for (const mode of ["zero", "x", "y"]) expect(svg).toContain(`>${mode}<`);
  });
});

describe("inferMethodPair", () => {
  it("finds the accelerated/baseline pair in a real table", () => {
    const rows = loadResultsCsv(fixture("results_speedup.csv"));
    expect(inferMethodPair(rows)).toEqual({ baseline: "locappr", accelerated: "aesp-locappr" });
  });

  it("refuses ambiguous method sets, listing them", () => {
    const rows = loadResultsCsv(fixture("results_speedup.csv"));
    const extra = [...rows, { ...rows[0], method: "appr" }];
    expect(() => inferMethodPair(extra)).toThrow(/appr.*locappr/);
  });
});

describe("figureSpeedupVsAlpha", () => {
  const rows = loadResultsCsv(fixture("results_speedup.csv"));

  function expectedMedian(alpha: number): number {
    const bySource = new Map<number, { base?: number; accel?: number }>();
    for (const row of rows.filter((r) => r.alpha === alpha)) {
      const e = bySource.get(row.source) ?? {};
      if (row.method === "locappr") e.base = row.ops_total;
      else e.accel = row.ops_total;
      bySource.set(row.source, e);
    }
    const ratios = [...bySource.values()]
      .map((e) => (e.base as number) / (e.accel as number))
      .sort((a, b) => a - b);
    const mid = ratios.length >> 1;
    return ratios.length % 2 === 1 ? ratios[mid] : (ratios[mid - 1] + ratios[mid]) / 2;
  }

  it("labels the per-alpha medians computed from the table", () => {
    const svg = figureSpeedupVsAlpha(rows, { logY: false });
    for (const alpha of [0.001, 0.1]) {
      const label = fmtTick(Number(expectedMedian(alpha).toPrecision(3)));
      expect(svg).toContain(`>${label}<`);
    }
    expect(svg).toContain("ops(locappr) / ops(aesp-locappr)");
    expect(svg).toContain("no speedup");
  });

  it("draws one scatter point per paired source", () => {
    const svg = figureSpeedupVsAlpha(rows, { logY: false });
    const dots = svg.match(/fill-opacity="0.35"/g) ?? [];
    expect(dots).toHaveLength(100);
  });

  it("matches the inferred pair when set explicitly", () => {
    const inferred = figureSpeedupVsAlpha(rows, { logY: false });
    const explicit = figureSpeedupVsAlpha(rows, {
      logY: false,
      baseline: "locappr",
      accelerated: "aesp-locappr",
    });
    expect(explicit).toBe(inferred);
  });

  it("rejects method names absent from the table", () => {
    expect(() =>
      figureSpeedupVsAlpha(rows, { logY: false, baseline: "appr", accelerated: "aesp-locgd" }),
    ).toThrow(/no instance has both/);
  });
});

describe("peakVolumeGammaRatio", () => {
  it("takes the max over outer iterations of mean volume over mean contraction", () => {
    const row = (t: number, vol_S: number, gamma: number) => ({
      t, k: 0, vol_S, gamma, grad_l1_scaled: 1, ops_cum: 1, err_inf: null,
    });
    const rows = [row(1, 4, 0.5), row(1, 2, 0.5), row(2, 8, 1), row(3, 0, 0)];
    expect(peakVolumeGammaRatio(rows)).toBeCloseTo(8, 12);
  });
});

describe("figureRatioBars", () => {
  const rows = loadResultsCsv(fixture("results_accel.csv"));

  it("draws a mean R bar per graph from the accelerated rows", () => {
    const svg = figureRatioBars(rows, [], {});
    expect(svg).toContain("mean warm-start ratio R");
    expect(svg).toContain("ba-300000-3-7");
    const aesp = rows.filter((r) => r.method === "aesp-locappr");
    const meanR = aesp.reduce((s, r) => s + r.R, 0) / aesp.length;
    expect(svg).toContain(`>${fmtTick(Number(meanR.toPrecision(3)))}<`);
  });

  it("adds a volume/contraction panel when traces are given", () => {
    const svg = figureRatioBars(rows, [apprTrace, aespTrace], {});
    expect(svg).toContain("peak volume / contraction");
    expect(svg).toContain(">appr<");
    const expected = peakVolumeGammaRatio(apprTrace.rows);
    expect(svg).toContain(`>${fmtTick(Number(expected.toPrecision(3)))}<`);
  });
});
