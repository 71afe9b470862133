/**
 * Display formatting helpers. Values arrive as raw numbers from the
 * service and are rounded for presentation only.
 */

/** Milliseconds as a compact human duration, e.g. 850 ms or 2.7 s. */
export function formatMs(ms: number): string {
  if (!Number.isFinite(ms)) {
    return '–';
  }
  if (Math.abs(ms) < 1000) {
    return `${Math.round(ms)} ms`;
  }
  return `${(ms / 1000).toFixed(1)} s`;
}

/** Share in [0, 1] as a percentage with one decimal. */
export function formatShare(share: number): string {
  return `${(share * 100).toFixed(1)}%`;
}

/** Fractional hours as a readable duration. */
export function formatHours(hours: number): string {
  if (hours >= 1) {
    return `${hours.toFixed(1)} h`;
  }
  return `${Math.round(hours * 60)} min`;
}

/** Metric value for table cells; null means the metric was unavailable. */
export function formatMetricValue(value: number | null): string {
  if (value === null) {
    return '–';
  }
  return Number.isInteger(value) ? String(value) : value.toFixed(1);
}

/** Human name for a metric field. */
export function metricLabel(metric: string): string {
  const names: Record<string, string> = {
    time_on_task: 'Time on task',
    n_interactions: 'Interactions',
    glance_count_offroad: 'Off-road glance count',
    total_glance_duration_offroad: 'Total off-road glance time',
    mean_glance_duration_offroad: 'Mean off-road glance time',
    long_glance_count: 'Long glances',
    mean_speed: 'Mean speed',
  };
  return names[metric] ?? metric;
}
