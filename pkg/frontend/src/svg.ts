/**
 * Deterministic SVG building blocks: scales, tick generation, axes, and
 * small shape helpers. Everything renders from plain numbers into plain
 * strings, so identical inputs always produce identical bytes. No
 * timestamps, no random ids, fixed fonts and palette.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

/** Round to 2 decimals for pixel coordinates, normalizing -0 to 0. */
export function r(v: number): number {
  const x = Math.round(v * 100) / 100;
  return x === 0 ? 0 : x;
}

/** Fixed qualitative palette, assigned to series in input order. */
export const PALETTE = [
  "#2563eb", "#dc2626", "#059669", "#d97706", "#7c3aed",
  "#0891b2", "#be185d", "#4d7c0f", "#b45309", "#1e3a8a",
];

export function seriesColor(i: number): string {
  return PALETTE[i % PALETTE.length];
}

export type Scale = (v: number) => number;

export function makeLinearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0;
  if (span === 0) return () => (r0 + r1) / 2;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function makeLogScale(d0: number, d1: number, r0: number, r1: number): Scale {
  if (d0 <= 0 || d1 <= 0) {
    throw new Error(`log scale needs positive domain, got [${d0}, ${d1}]`);
  }
  const l0 = Math.log10(d0);
  const span = Math.log10(d1) - l0;
  if (span === 0) return () => (r0 + r1) / 2;
  return (v: number) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0);
}

/** Evenly spaced round-valued ticks covering [min, max]. */
export function linearTicks(min: number, max: number, count = 6): number[] {
  if (min === max) return [min];
  const rawStep = (max - min) / Math.max(1, count - 1);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 1e-9; v += step) {
    ticks.push(r100(v));
  }
  return ticks;
}

/** Snap away float noise from repeated step addition. */
function r100(v: number): number {
  return Number(v.toPrecision(12));
}

/** Powers of ten inside [min, max], padded outward to at least two ticks. */
export function logTicks(min: number, max: number): number[] {
  const lo = Math.floor(Math.log10(min));
  const hi = Math.ceil(Math.log10(max));
  const ticks: number[] = [];
  for (let e = lo; e <= hi; e++) ticks.push(Math.pow(10, e));
  return ticks;
}

/** Tick label: plain for mid-range values, exponent form otherwise. */
export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.001 && a < 100000) {
    return String(Number(v.toPrecision(6)));
  }
  const e = Math.floor(Math.log10(a));
  const mant = Number((v / Math.pow(10, e)).toPrecision(3));
  return mant === 1 ? `1e${e}` : `${mant}e${e}`;
}

export interface Frame {
  left: number;
  top: number;
  right: number;
  bottom: number;
}

export function renderGridLines(ticks: number[], sy: Scale, x0: number, x1: number): string[] {
  return ticks.map(
    (v) => `<line x1="${r(x0)}" y1="${r(sy(v))}" x2="${r(x1)}" y2="${r(sy(v))}" stroke="#eee" stroke-width="1"/>`,
  );
}

export function renderYAxis(ticks: number[], sy: Scale, x0: number, fmt = fmtTick): string[] {
  const out: string[] = [];
  for (const v of ticks) {
    out.push(`<line x1="${r(x0 - 4)}" y1="${r(sy(v))}" x2="${r(x0)}" y2="${r(sy(v))}" stroke="#333" stroke-width="1"/>`);
    out.push(`<text x="${r(x0 - 7)}" y="${r(sy(v) + 3.5)}" text-anchor="end" fill="#333" font-size="11">${fmt(v)}</text>`);
  }
  return out;
}

export function renderXAxis(ticks: number[], sx: Scale, y0: number, fmt = fmtTick): string[] {
  const out: string[] = [];
  for (const v of ticks) {
    out.push(`<line x1="${r(sx(v))}" y1="${r(y0)}" x2="${r(sx(v))}" y2="${r(y0 + 4)}" stroke="#333" stroke-width="1"/>`);
    out.push(`<text x="${r(sx(v))}" y="${r(y0 + 16)}" text-anchor="middle" fill="#333" font-size="11">${fmt(v)}</text>`);
  }
  return out;
}

export function renderFrameBorder(f: Frame): string {
  return `<rect x="${r(f.left)}" y="${r(f.top)}" width="${r(f.right - f.left)}" height="${r(f.bottom - f.top)}" fill="none" stroke="#333" stroke-width="1"/>`;
}

export function polylinePoints(xs: number[], ys: number[]): string {
  const pts: string[] = [];
  for (let i = 0; i < xs.length; i++) pts.push(`${r(xs[i])},${r(ys[i])}`);
  return pts.join(" ");
}

export function renderLegend(
  entries: { label: string; color: string }[],
  x: number,
  y: number,
): string[] {
  const lineH = 16;
  const width = Math.max(...entries.map((e) => e.label.length)) * 6.6 + 34;
  const out: string[] = [];
  out.push(
    `<rect x="${r(x)}" y="${r(y)}" width="${r(width)}" height="${entries.length * lineH + 10}" rx="3" fill="white" fill-opacity="0.9" stroke="#ccc" stroke-width="1"/>`,
  );
  entries.forEach((e, i) => {
    const cy = y + 13 + i * lineH;
    out.push(`<line x1="${r(x + 8)}" y1="${r(cy)}" x2="${r(x + 24)}" y2="${r(cy)}" stroke="${e.color}" stroke-width="2"/>`);
    out.push(`<text x="${r(x + 29)}" y="${r(cy + 3.5)}" fill="#333" font-size="11">${escapeXml(e.label)}</text>`);
  });
  return out;
}

export function escapeXml(s: string): string {
  return s
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function axisTitleX(f: Frame, height: number, text: string): string {
  const cx = (f.left + f.right) / 2;
  return `<text x="${r(cx)}" y="${r(height - 8)}" text-anchor="middle" fill="#333" font-size="12">${escapeXml(text)}</text>`;
}

export function axisTitleY(f: Frame, text: string): string {
  const cy = (f.top + f.bottom) / 2;
  return `<text x="14" y="${r(cy)}" text-anchor="middle" fill="#333" font-size="12" transform="rotate(-90,14,${r(cy)})">${escapeXml(text)}</text>`;
}

export function svgDocument(width: number, height: number, body: string[], title?: string): string {
  const lines: string[] = [];
  lines.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" font-family="Helvetica,Arial,sans-serif" font-size="12">`,
  );
  lines.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  if (title) {
    lines.push(`<text x="${width / 2}" y="18" text-anchor="middle" fill="#111" font-size="14" font-weight="bold">${escapeXml(title)}</text>`);
  }
  lines.push(...body);
  lines.push("</svg>");
  return lines.join("\n") + "\n";
}

export function writeSvg(svg: string, path: string): void {
  mkdirSync(dirname(path), { recursive: true });
  writeFileSync(path, svg, "utf8");
}
