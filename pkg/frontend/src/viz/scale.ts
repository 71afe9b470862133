/**
 * Scale and color helpers shared by the SVG layouts.
 * Everything here is a pure function so layouts stay unit-testable.
 */

/** Map a value from [d0, d1] to [r0, r1] linearly. Degenerate domains pin to r0. */
export function linearScale(
  d0: number,
  d1: number,
  r0: number,
  r1: number,
): (value: number) => number {
  const span = d1 - d0;
  if (span === 0) {
    return () => r0;
  }
  return (value: number) => r0 + ((value - d0) / span) * (r1 - r0);
}

/** Round tick positions covering [lo, hi] with a step of 1, 2, or 5 times a power of ten. */
export function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const rawStep = (hi - lo) / Math.max(count, 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => c >= rawStep) ?? candidates[3];
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    // Snap to the step grid so labels do not show float drift.
    ticks.push(Number((Math.round(v / step) * step).toPrecision(12)));
  }
  return ticks;
}

const RAMP_STOPS: [number, number, number][] = [
  [49, 130, 206],
  [236, 201, 75],
  [229, 62, 62],
];

/**
 * Sequential color ramp for edge transition times: cool for quick,
 * hot for slow. Input is clamped to [0, 1].
 */
export function rampColor(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const scaled = clamped * (RAMP_STOPS.length - 1);
  const idx = Math.min(Math.floor(scaled), RAMP_STOPS.length - 2);
  const frac = scaled - idx;
  const lo = RAMP_STOPS[idx];
  const hi = RAMP_STOPS[idx + 1];
  const channel = (i: number) => Math.round(lo[i] + (hi[i] - lo[i]) * frac);
  return `rgb(${channel(0)}, ${channel(1)}, ${channel(2)})`;
}
