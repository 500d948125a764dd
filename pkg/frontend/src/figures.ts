/**
 * The four figure kinds. Each builder takes parsed rows plus options and
 * returns a complete SVG document as a string; no I/O happens here.
 *
 *   error_vs_ops     measured error envelope vs cumulative operations,
 *                    one line per labeled trace
 *   init_ablation    scaled gradient norm vs cumulative operations,
 *                    one line per labeled trace
 *   speedup_vs_alpha per-source operation ratios baseline/accelerated
 *                    from a results table, with per-alpha medians
 *   ratio_bars       per-graph mean R from a results table, plus the
 *                    per-trace peak volume/contraction ratio when traces
 *                    are supplied
 */

import { ResultsRow, TraceRow } from "./csv.js";
import { SchemaError } from "./errors.js";
import {
  Frame, axisTitleX, axisTitleY, escapeXml, fmtTick, linearTicks, logTicks,
  makeLinearScale, makeLogScale, polylinePoints, r, renderFrameBorder,
  renderGridLines, renderLegend, renderXAxis, renderYAxis, seriesColor,
  svgDocument,
} from "./svg.js";

export interface LabeledTrace {
  label: string;
  rows: TraceRow[];
}

interface Series {
  label: string;
  xs: number[];
  ys: number[];
}

const W = 760;
const H = 430;
const FRAME: Frame = { left: 70, top: 34, right: W - 24, bottom: H - 52 };

function cmp(a: number, b: number): number {
  return a < b ? -1 : a > b ? 1 : 0;
}

function cmpStr(a: string, b: string): number {
  return a < b ? -1 : a > b ? 1 : 0;
}

function median(values: number[]): number {
  const v = [...values].sort(cmp);
  const mid = v.length >> 1;
  return v.length % 2 === 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

/** Shared line chart: series of (x, y) points with legend and axis titles. */
function renderLineChart(
  series: Series[],
  opts: { title?: string; xLabel: string; yLabel: string; logY: boolean },
): string {
  const drawable = series.filter((s) => s.xs.length > 0);
  if (drawable.length === 0) {
    throw new SchemaError("no drawable points in any series");
  }
  const allX = drawable.flatMap((s) => s.xs);
  const allY = drawable.flatMap((s) => s.ys);
  const x0 = Math.min(...allX);
  const x1 = Math.max(...allX);
  const y0 = Math.min(...allY);
  const y1 = Math.max(...allY);

  const sx = makeLinearScale(x0, x1 === x0 ? x0 + 1 : x1, FRAME.left, FRAME.right);
  let sy;
  let yTicks;
  if (opts.logY) {
    // The axis spans whole decades, so the tick range is the scale domain.
    yTicks = logTicks(y0, y1 === y0 ? y0 * 10 : y1);
    sy = makeLogScale(yTicks[0], yTicks[yTicks.length - 1], FRAME.bottom, FRAME.top);
  } else {
    const top = y1 === y0 ? y0 + 1 : y1;
    sy = makeLinearScale(Math.min(0, y0), top, FRAME.bottom, FRAME.top);
    yTicks = linearTicks(Math.min(0, y0), top, 6);
  }
  const xTicks = linearTicks(x0, x1, 6);

  const body: string[] = [];
  body.push(...renderGridLines(yTicks, sy, FRAME.left, FRAME.right));
  drawable.forEach((s, i) => {
    body.push(
      `<polyline fill="none" stroke="${seriesColor(i)}" stroke-width="1.8" points="${polylinePoints(
        s.xs.map(sx),
        s.ys.map(sy),
      )}"/>`,
    );
  });
  body.push(renderFrameBorder(FRAME));
  body.push(...renderYAxis(yTicks, sy, FRAME.left));
  body.push(...renderXAxis(xTicks, sx, FRAME.bottom));
  body.push(axisTitleX(FRAME, H, opts.xLabel));
  body.push(axisTitleY(FRAME, opts.yLabel));
  body.push(
    ...renderLegend(
      drawable.map((s, i) => ({ label: s.label, color: seriesColor(i) })),
      FRAME.right - 170,
      FRAME.top + 8,
    ),
  );
  return svgDocument(W, H, body, opts.title);
}

/** Running minimum of measured error as operations accumulate. */
export function figureErrorVsOps(
  traces: LabeledTrace[],
  opts: { title?: string; logY: boolean },
): string {
  const series: Series[] = traces.map((t) => {
    const measured = t.rows.filter((row) => row.err_inf !== null);
    if (measured.length === 0) {
      throw new SchemaError(
        `trace ${JSON.stringify(t.label)}: column err_inf has no measured values; ` +
          "rerun the solver with an oracle attached",
      );
    }
    const xs: number[] = [];
    const ys: number[] = [];
    let best = Infinity;
    for (const row of [...measured].sort((a, b) => cmp(a.ops_cum, b.ops_cum))) {
      best = Math.min(best, row.err_inf as number);
      if (opts.logY && best <= 0) continue;
      xs.push(row.ops_cum);
      ys.push(best);
    }
    return { label: t.label, xs, ys };
  });
  return renderLineChart(series, {
    title: opts.title,
    xLabel: "cumulative operations",
    yLabel: "max error / degree",
    logY: opts.logY,
  });
}

/** Scaled gradient norm per sweep, for comparing warm-start choices. */
export function figureInitAblation(
  traces: LabeledTrace[],
  opts: { title?: string; logY: boolean },
): string {
  const series: Series[] = traces.map((t) => {
    const xs: number[] = [];
    const ys: number[] = [];
    for (const row of [...t.rows].sort((a, b) => cmp(a.ops_cum, b.ops_cum))) {
      if (opts.logY && row.grad_l1_scaled <= 0) continue;
      xs.push(row.ops_cum);
      ys.push(row.grad_l1_scaled);
    }
    return { label: t.label, xs, ys };
  });
  return renderLineChart(series, {
    title: opts.title,
    xLabel: "cumulative operations",
    yLabel: "scaled gradient l1 norm",
    logY: opts.logY,
  });
}

interface SpeedupGroup {
  alpha: number;
  ratios: number[];
}

/** Pair up baseline and accelerated rows, keyed by everything but method. */
function speedupGroups(
  rows: ResultsRow[],
  baseline: string,
  accelerated: string,
): Map<string, SpeedupGroup> {
  const byInstance = new Map<string, Map<string, number>>();
  for (const row of rows) {
    const key = `${row.graph}|${row.alpha}|${row.eps}|${row.source}`;
    let m = byInstance.get(key);
    if (!m) {
      m = new Map();
      byInstance.set(key, m);
    }
    m.set(row.method, row.ops_total);
  }
  const groups = new Map<string, SpeedupGroup>();
  for (const [key, methods] of byInstance) {
    const base = methods.get(baseline);
    const accel = methods.get(accelerated);
    if (base === undefined || accel === undefined) continue;
    const alpha = Number(key.split("|")[1]);
    let g = groups.get(String(alpha));
    if (!g) {
      g = { alpha, ratios: [] };
      groups.set(String(alpha), g);
    }
    g.ratios.push(base / accel);
  }
  return groups;
}

/** Infer the method pair when the spec leaves it open. */
export function inferMethodPair(rows: ResultsRow[]): { baseline: string; accelerated: string } {
  const methods = [...new Set(rows.map((row) => row.method))].sort(cmpStr);
  const accel = methods.filter((m) => m.startsWith("aesp-"));
  const base = methods.filter((m) => !m.startsWith("aesp-"));
  if (accel.length !== 1 || base.length !== 1) {
    throw new SchemaError(
      `cannot infer baseline/accelerated pair from methods ${methods.join(", ")}; ` +
        "set baseline and accelerated explicitly",
    );
  }
  return { baseline: base[0], accelerated: accel[0] };
}

/** Operation-count speedup of the accelerated method, by alpha. */
export function figureSpeedupVsAlpha(
  rows: ResultsRow[],
  opts: { title?: string; logY: boolean; baseline?: string; accelerated?: string },
): string {
  const pair =
    opts.baseline && opts.accelerated
      ? { baseline: opts.baseline, accelerated: opts.accelerated }
      : inferMethodPair(rows);
  const groups = [...speedupGroups(rows, pair.baseline, pair.accelerated).values()].sort(
    (a, b) => cmp(a.alpha, b.alpha),
  );
  if (groups.length === 0) {
    throw new SchemaError(
      `no instance has both ${pair.baseline} and ${pair.accelerated} rows; ` +
        "check the method names against the results file",
    );
  }

  const alphas = groups.map((g) => g.alpha);
  const ratios = groups.flatMap((g) => g.ratios);
  const medians = groups.map((g) => median(g.ratios));
  const logX = alphas.length > 1 && alphas[0] > 0 && alphas[alphas.length - 1] / alphas[0] >= 10;

  const x0 = alphas[0];
  const x1 = alphas[alphas.length - 1];
  const sx = logX
    ? makeLogScale(x0, x1, FRAME.left + 30, FRAME.right - 30)
    : makeLinearScale(x0, x1 === x0 ? x0 + 1 : x1, FRAME.left + 30, FRAME.right - 30);
  const yMax = Math.max(...ratios, 1);
  let sy;
  let yTicks;
  if (opts.logY) {
    yTicks = logTicks(Math.min(...ratios), yMax);
    sy = makeLogScale(yTicks[0], yTicks[yTicks.length - 1], FRAME.bottom, FRAME.top);
  } else {
    sy = makeLinearScale(0, yMax * 1.05, FRAME.bottom, FRAME.top);
    yTicks = linearTicks(0, yMax * 1.05, 6);
  }

  const body: string[] = [];
  body.push(...renderGridLines(yTicks, sy, FRAME.left, FRAME.right));
  if (!opts.logY || yTicks[0] <= 1) {
    body.push(
      `<line x1="${r(FRAME.left)}" y1="${r(sy(1))}" x2="${r(FRAME.right)}" y2="${r(sy(1))}" stroke="#999" stroke-width="1" stroke-dasharray="4,3"/>`,
    );
    body.push(
      `<text x="${r(FRAME.right - 4)}" y="${r(sy(1) - 4)}" text-anchor="end" fill="#999" font-size="10">no speedup</text>`,
    );
  }
  groups.forEach((g) => {
    for (const ratio of g.ratios) {
      body.push(
        `<circle cx="${r(sx(g.alpha))}" cy="${r(sy(ratio))}" r="2.5" fill="${seriesColor(0)}" fill-opacity="0.35"/>`,
      );
    }
  });
  body.push(
    `<polyline fill="none" stroke="${seriesColor(1)}" stroke-width="2" points="${polylinePoints(
      alphas.map(sx),
      medians.map(sy),
    )}"/>`,
  );
  groups.forEach((g, i) => {
    body.push(
      `<circle cx="${r(sx(g.alpha))}" cy="${r(sy(medians[i]))}" r="4" fill="${seriesColor(1)}"/>`,
    );
    body.push(
      `<text x="${r(sx(g.alpha))}" y="${r(sy(medians[i]) - 9)}" text-anchor="middle" fill="#333" font-size="10">${fmtTick(Number(medians[i].toPrecision(3)))}</text>`,
    );
  });
  body.push(renderFrameBorder(FRAME));
  body.push(...renderYAxis(yTicks, sy, FRAME.left));
  body.push(...renderXAxis(alphas, sx, FRAME.bottom));
  body.push(axisTitleX(FRAME, H, "alpha"));
  body.push(axisTitleY(FRAME, `ops(${pair.baseline}) / ops(${pair.accelerated})`));
  body.push(
    ...renderLegend(
      [
        { label: "per-source ratio", color: seriesColor(0) },
        { label: "median", color: seriesColor(1) },
      ],
      FRAME.right - 170,
      FRAME.top + 8,
    ),
  );
  return svgDocument(W, H, body, opts.title);
}

function renderBarPanel(
  frame: Frame,
  bars: { label: string; value: number }[],
  opts: { yLabel: string; logY: boolean },
): string[] {
  const maxV = Math.max(...bars.map((b) => b.value));
  const minV = Math.min(...bars.map((b) => b.value));
  const logY = opts.logY && minV > 0;
  let sy;
  let yTicks;
  if (logY) {
    yTicks = logTicks(minV, maxV === minV ? minV * 10 : maxV);
    sy = makeLogScale(yTicks[0], yTicks[yTicks.length - 1], frame.bottom, frame.top);
  } else {
    sy = makeLinearScale(0, maxV * 1.1 || 1, frame.bottom, frame.top);
    yTicks = linearTicks(0, maxV * 1.1 || 1, 5);
  }

  const out: string[] = [];
  out.push(...renderGridLines(yTicks, sy, frame.left, frame.right));
  const slot = (frame.right - frame.left) / bars.length;
  const barW = Math.min(60, slot * 0.6);
  bars.forEach((b, i) => {
    const cx = frame.left + slot * (i + 0.5);
    const top = sy(b.value);
    out.push(
      `<rect x="${r(cx - barW / 2)}" y="${r(top)}" width="${r(barW)}" height="${r(frame.bottom - top)}" fill="${seriesColor(i)}" fill-opacity="0.8"/>`,
    );
    out.push(
      `<text x="${r(cx)}" y="${r(top - 5)}" text-anchor="middle" fill="#333" font-size="10">${fmtTick(Number(b.value.toPrecision(3)))}</text>`,
    );
    out.push(
      `<text x="${r(cx)}" y="${r(frame.bottom + 16)}" text-anchor="middle" fill="#333" font-size="10">${escapeXml(b.label)}</text>`,
    );
  });
  out.push(renderFrameBorder(frame));
  out.push(...renderYAxis(yTicks, sy, frame.left));
  out.push(
    `<text x="${r((frame.left + frame.right) / 2)}" y="${r(frame.top - 8)}" text-anchor="middle" fill="#333" font-size="12">${escapeXml(opts.yLabel)}</text>`,
  );
  return out;
}

/** Per-trace peak of (mean pushed volume / mean contraction) over outer iterations. */
export function peakVolumeGammaRatio(rows: TraceRow[]): number {
  const byT = new Map<number, { vol: number; gamma: number; count: number }>();
  for (const row of rows) {
    if (row.vol_S <= 0) continue;
    let acc = byT.get(row.t);
    if (!acc) {
      acc = { vol: 0, gamma: 0, count: 0 };
      byT.set(row.t, acc);
    }
    acc.vol += row.vol_S;
    acc.gamma += row.gamma;
    acc.count += 1;
  }
  let peak = 0;
  for (const acc of byT.values()) {
    if (acc.gamma > 0) peak = Math.max(peak, acc.vol / acc.gamma);
  }
  return peak;
}

/** Warm-start quality (R) per graph, plus per-trace volume/contraction peaks. */
export function figureRatioBars(
  rows: ResultsRow[],
  traces: LabeledTrace[],
  opts: { title?: string },
): string {
  const graphs = [...new Set(rows.map((row) => row.graph))].sort(cmpStr);
  const rBars = graphs.map((g) => {
    const mine = rows.filter((row) => row.graph === g);
    const accel = mine.filter((row) => row.method.startsWith("aesp-"));
    const use = accel.length > 0 ? accel : mine;
    const mean = use.reduce((s, row) => s + row.R, 0) / use.length;
    return { label: g, value: mean };
  });

  const body: string[] = [];
  if (traces.length === 0) {
    body.push(...renderBarPanel(FRAME, rBars, { yLabel: "mean warm-start ratio R", logY: false }));
    body.push(axisTitleX(FRAME, H, "graph"));
    return svgDocument(W, H, body, opts.title);
  }

  const mid = (FRAME.left + FRAME.right) / 2;
  const leftFrame: Frame = { ...FRAME, right: mid - 30 };
  const rightFrame: Frame = { ...FRAME, left: mid + 42 };
  const volBars = traces.map((t) => {
    const peak = peakVolumeGammaRatio(t.rows);
    if (peak <= 0) {
      throw new SchemaError(
        `trace ${JSON.stringify(t.label)}: no sweep with positive vol_S and gamma`,
      );
    }
    return { label: t.label, value: peak };
  });
  const spread = Math.max(...volBars.map((b) => b.value)) / Math.min(...volBars.map((b) => b.value));
  body.push(...renderBarPanel(leftFrame, rBars, { yLabel: "mean warm-start ratio R", logY: false }));
  body.push(
    ...renderBarPanel(rightFrame, volBars, {
      yLabel: "peak volume / contraction",
      logY: spread > 50,
    }),
  );
  return svgDocument(W, H, body, opts.title);
}
