/**
 * Sequence timeline layout: AOI glance lanes, speed and steering curves,
 * and interaction markers on one shared time axis. Off-road glances
 * longer than the long-glance threshold are flagged; the threshold
 * mirrors the service's definition and is used for visual emphasis only,
 * never to compute a number.
 */

import type { Aoi, Timeline } from '../api/types.js';
import { linearScale, niceTicks } from './scale.js';

/** An off-road glance strictly longer than this is flagged as long. */
export const LONG_GLANCE_MS = 2000;

const LANE_ORDER: Aoi[] = ['road', 'center_stack', 'other'];
const LANE_LABELS: Record<Aoi, string> = {
  road: 'Road',
  center_stack: 'Center stack',
  other: 'Other',
};

export interface TimelineLayoutOptions {
  width?: number;
  laneHeight?: number;
  seriesHeight?: number;
  /** Horizontal space reserved for lane labels. */
  labelWidth?: number;
}

export interface GlanceSpanLayout {
  t_start: number;
  duration: number;
  x: number;
  width: number;
  /** True for an off-road glance exceeding LONG_GLANCE_MS. */
  long: boolean;
}

export interface LaneLayout {
  aoi: Aoi;
  label: string;
  y: number;
  height: number;
  spans: GlanceSpanLayout[];
}

export interface MarkerLayout {
  t: number;
  element_id: string;
  gesture: string;
  label: string;
  x: number;
}

export interface SeriesLayout {
  name: 'speed' | 'steering_angle';
  label: string;
  y: number;
  height: number;
  /** SVG polyline points attribute value; empty when no samples. */
  points: string;
  zeroY: number | null;
}

export interface TimelineLayoutResult {
  width: number;
  height: number;
  plotX0: number;
  window: [number, number];
  ticks: { t: number; x: number; label: string }[];
  lanes: LaneLayout[];
  series: SeriesLayout[];
  markers: MarkerLayout[];
}

/** Lay out the timeline; labels enrich marker element ids. */
export function layoutTimeline(
  timeline: Timeline,
  labels: ReadonlyMap<string, string> = new Map(),
  options: TimelineLayoutOptions = {},
): TimelineLayoutResult {
  const width = options.width ?? 880;
  const laneHeight = options.laneHeight ?? 30;
  const seriesHeight = options.seriesHeight ?? 64;
  const labelWidth = options.labelWidth ?? 120;
  const markerBand = 26;
  const axisHeight = 24;
  const gap = 8;

  const [t0, t1] = timeline.window;
  const plotX0 = labelWidth;
  const plotX1 = width - 16;
  const x = linearScale(t0, t1 === t0 ? t0 + 1 : t1, plotX0, plotX1);

  const lanes: LaneLayout[] = LANE_ORDER.map((aoi, index) => {
    const y = markerBand + index * (laneHeight + gap);
    const spans = (timeline.glance_lanes[aoi] ?? []).map((span) => ({
      t_start: span.t_start,
      duration: span.duration,
      x: x(span.t_start),
      width: Math.max(x(span.t_start + span.duration) - x(span.t_start), 1),
      long: aoi !== 'road' && span.duration > LONG_GLANCE_MS,
    }));
    return { aoi, label: LANE_LABELS[aoi], y, height: laneHeight, spans };
  });

  const lanesBottom = markerBand + LANE_ORDER.length * (laneHeight + gap);
  const series: SeriesLayout[] = [];
  const samples = timeline.driving_series;
  const defs: { name: 'speed' | 'steering_angle'; label: string }[] = [
    { name: 'speed', label: 'Speed' },
    { name: 'steering_angle', label: 'Steering' },
  ];
  for (const [index, def] of defs.entries()) {
    const y = lanesBottom + index * (seriesHeight + gap);
    const values = samples.map((s) => s[def.name]);
    let points = '';
    let zeroY: number | null = null;
    if (values.length) {
      let lo = Math.min(...values);
      let hi = Math.max(...values);
      if (def.name === 'steering_angle') {
        // Symmetric scale keeps straight-ahead centered.
        const amp = Math.max(Math.abs(lo), Math.abs(hi), 1e-9);
        lo = -amp;
        hi = amp;
      }
      if (lo === hi) {
        lo -= 1;
        hi += 1;
      }
      const sy = linearScale(lo, hi, y + seriesHeight - 4, y + 4);
      points = samples.map((s) => `${x(s.t).toFixed(2)},${sy(s[def.name]).toFixed(2)}`).join(' ');
      if (lo <= 0 && 0 <= hi) {
        zeroY = sy(0);
      }
    }
    series.push({ name: def.name, label: def.label, y, height: seriesHeight, points, zeroY });
  }

  const markers: MarkerLayout[] = timeline.interaction_markers.map((m) => ({
    t: m.t,
    element_id: m.element_id,
    gesture: m.gesture,
    label: labels.get(m.element_id) ?? m.element_id,
    x: x(m.t),
  }));

  const seriesBottom = lanesBottom + defs.length * (seriesHeight + gap);
  const ticks = niceTicks(t0, t1, 8).map((t) => ({
    t,
    x: x(t),
    label: `${((t - t0) / 1000).toFixed(1)}s`,
  }));

  return {
    width,
    height: seriesBottom + axisHeight,
    plotX0,
    window: [t0, t1],
    ticks,
    lanes,
    series,
    markers,
  };
}
