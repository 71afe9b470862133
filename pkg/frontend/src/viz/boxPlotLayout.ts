/**
 * Box plot layout: one horizontal box-and-whisker row per compared flow,
 * every sequence drawn as an addressable dot. The geometry is computed
 * from the service's quartile fields verbatim; nothing is re-derived
 * from the raw points.
 */

import type { BoxPlot } from '../api/types.js';
import { linearScale, niceTicks } from './scale.js';

export interface BoxPlotLayoutOptions {
  width?: number;
  rowHeight?: number;
  /** Horizontal space reserved for flow labels. */
  labelWidth?: number;
}

export interface BoxPlotDotLayout {
  sequence_id: string;
  value: number;
  x: number;
  y: number;
  outlier: boolean;
}

export interface BoxPlotRowLayout {
  path: string[];
  label: string;
  n: number;
  /** Row top edge. */
  y: number;
  centerY: number;
  boxX0: number;
  boxX1: number;
  boxY0: number;
  boxY1: number;
  medianX: number;
  whiskerLowX: number;
  whiskerHighX: number;
  dots: BoxPlotDotLayout[];
}

export interface BoxPlotLayoutResult {
  width: number;
  height: number;
  plotX0: number;
  ticks: { value: number; x: number }[];
  rows: BoxPlotRowLayout[];
}

/** Lay out one row per box plot, sharing a single value axis. */
export function layoutBoxPlots(
  plots: BoxPlot[],
  labels: ReadonlyMap<string, string> = new Map(),
  options: BoxPlotLayoutOptions = {},
): BoxPlotLayoutResult {
  const width = options.width ?? 880;
  const rowHeight = options.rowHeight ?? 72;
  const labelWidth = options.labelWidth ?? 230;
  const axisHeight = 24;

  const plotX0 = labelWidth;
  const plotX1 = width - 16;

  let lo = Infinity;
  let hi = -Infinity;
  for (const plot of plots) {
    lo = Math.min(lo, plot.min);
    hi = Math.max(hi, plot.max);
  }
  if (!Number.isFinite(lo)) {
    lo = 0;
    hi = 1;
  }
  if (lo === hi) {
    // Degenerate spread still needs a drawable axis.
    lo -= 1;
    hi += 1;
  }
  const pad = (hi - lo) * 0.05;
  const x = linearScale(lo - pad, hi + pad, plotX0, plotX1);

  const rows: BoxPlotRowLayout[] = plots.map((plot, index) => {
    const y = index * rowHeight;
    const centerY = y + rowHeight / 2;
    const boxHalf = 11;
    const outlierIds = new Set(plot.outliers.map((o) => o.sequence_id));
    const dots: BoxPlotDotLayout[] = plot.points.map((point, i) => ({
      sequence_id: point.sequence_id,
      value: point.value,
      x: x(point.value),
      // Deterministic jitter keeps coincident dots distinguishable.
      y: centerY + ((i % 5) - 2) * 5,
      outlier: outlierIds.has(point.sequence_id),
    }));
    const label = plot.path.map((id) => labels.get(id) ?? id).join(' → ');
    return {
      path: plot.path,
      label,
      n: plot.n,
      y,
      centerY,
      boxX0: x(plot.q1),
      boxX1: x(plot.q3),
      boxY0: centerY - boxHalf,
      boxY1: centerY + boxHalf,
      medianX: x(plot.median),
      whiskerLowX: x(plot.whisker_low),
      whiskerHighX: x(plot.whisker_high),
      dots,
    };
  });

  const ticks = niceTicks(lo, hi, 6).map((value) => ({ value, x: x(value) }));
  return {
    width,
    height: rows.length * rowHeight + axisHeight,
    plotX0,
    ticks,
    rows,
  };
}
