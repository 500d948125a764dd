/** Turn a validated plot spec into an SVG string (or a file on disk). */

import { loadResultsCsv, loadTraceCsv } from "./csv.js";
import {
  LabeledTrace, figureErrorVsOps, figureInitAblation, figureRatioBars,
  figureSpeedupVsAlpha,
} from "./figures.js";
import { PlotSpec, resolveLogY } from "./spec.js";
import { writeSvg } from "./svg.js";

function loadTraces(spec: PlotSpec): LabeledTrace[] {
  return (spec.traces ?? []).map((t) => ({ label: t.label, rows: loadTraceCsv(t.path) }));
}

export function renderSpec(spec: PlotSpec): string {
  const logY = resolveLogY(spec);
  switch (spec.kind) {
    case "error_vs_ops":
      return figureErrorVsOps(loadTraces(spec), { title: spec.title, logY });
    case "init_ablation":
      return figureInitAblation(loadTraces(spec), { title: spec.title, logY });
    case "speedup_vs_alpha":
      return figureSpeedupVsAlpha(loadResultsCsv(spec.results as string), {
        title: spec.title,
        logY,
        baseline: spec.baseline,
        accelerated: spec.accelerated,
      });
    case "ratio_bars":
      return figureRatioBars(loadResultsCsv(spec.results as string), loadTraces(spec), {
        title: spec.title,
      });
  }
}

export function renderToFile(spec: PlotSpec): void {
  const svg = renderSpec(spec);
  writeSvg(svg, spec.out);
}
