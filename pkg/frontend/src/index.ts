export { InputError, PlotsError, SchemaError, ArgError } from "./errors.js";
export {
  RESULTS_COLUMNS, TRACE_COLUMNS, loadResultsCsv, loadTraceCsv,
} from "./csv.js";
export type { ResultsRow, TraceRow } from "./csv.js";
export { PLOT_KINDS, loadSpecFile, resolveLogY, validateSpec } from "./spec.js";
export type { PlotKind, PlotSpec } from "./spec.js";
export {
  figureErrorVsOps, figureInitAblation, figureRatioBars, figureSpeedupVsAlpha,
  inferMethodPair, peakVolumeGammaRatio,
} from "./figures.js";
export type { LabeledTrace } from "./figures.js";
export { renderSpec, renderToFile } from "./render.js";
export { main } from "./cli.js";
