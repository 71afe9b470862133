/**
 * Serializable analysis view state and its URL-fragment codec.
 *
 * The entire state a share link must reproduce lives here: task, filters,
 * extraction options, flow selection, comparison metric, open sequence,
 * viewing history, and favorites. Encoding is versioned JSON inside a
 * single fragment parameter, so links survive future field additions.
 *
 * Fragment schema (documented contract):
 *   #view=<encodeURIComponent(JSON.stringify({v: 1, ...fields}))>
 * Fields are omitted when they hold their default value; decoding an
 * absent, foreign, or malformed fragment yields the default state.
 */

import type { ExtractionOptions, FilterSpec, MetricName, TaskDefinition } from '../api/types.js';
import { METRICS } from '../api/types.js';

export interface ViewState {
  /** Analysis scope; null until a task is defined or recorded. */
  task: TaskDefinition | null;
  filters: FilterSpec;
  options: ExtractionOptions;
  /** Flow paths ticked for comparison, in table order. */
  selectedPaths: string[][];
  metric: MetricName;
  /** Sequence open in the detail panel, if any. */
  openSequenceId: string | null;
  /** Previously viewed sequence ids, newest first. */
  history: string[];
  /** Favorited sequence ids; ordered set, no duplicates. */
  favorites: string[];
}

const FRAGMENT_KEY = 'view';
const VERSION = 1;

export const DEFAULT_METRIC: MetricName = 'time_on_task';

/** Most recently viewed sequences kept in history. */
export const HISTORY_LIMIT = 20;

export function defaultViewState(): ViewState {
  return {
    task: null,
    filters: {},
    options: {},
    selectedPaths: [],
    metric: DEFAULT_METRIC,
    openSequenceId: null,
    history: [],
    favorites: [],
  };
}

function isStringArray(value: unknown): value is string[] {
  return Array.isArray(value) && value.every((v) => typeof v === 'string');
}

function isPathList(value: unknown): value is string[][] {
  return Array.isArray(value) && value.every(isStringArray);
}

function isTask(value: unknown): value is TaskDefinition {
  if (typeof value !== 'object' || value === null) return false;
  const t = value as Record<string, unknown>;
  return typeof t.start_element === 'string' && typeof t.end_element === 'string';
}

function isMetric(value: unknown): value is MetricName {
  return typeof value === 'string' && (METRICS as readonly string[]).includes(value);
}

function cleanFilters(value: unknown): FilterSpec {
  if (typeof value !== 'object' || value === null) return {};
  const raw = value as Record<string, unknown>;
  const out: FilterSpec = {};
  if (isStringArray(raw.car_models) && raw.car_models.length) out.car_models = raw.car_models;
  if (isStringArray(raw.software_versions) && raw.software_versions.length) {
    out.software_versions = raw.software_versions;
  }
  if (isStringArray(raw.screen_sizes) && raw.screen_sizes.length) {
    out.screen_sizes = raw.screen_sizes;
  }
  if (isStringArray(raw.date_range) && raw.date_range.length === 2) {
    out.date_range = [raw.date_range[0], raw.date_range[1]];
  }
  if (typeof raw.min_support === 'number') out.min_support = raw.min_support;
  if (typeof raw.top_n === 'number') out.top_n = raw.top_n;
  return out;
}

function cleanOptions(value: unknown): ExtractionOptions {
  if (typeof value !== 'object' || value === null) return {};
  const raw = value as Record<string, unknown>;
  const out: ExtractionOptions = {};
  if (typeof raw.max_gap === 'number' || raw.max_gap === null) out.max_gap = raw.max_gap;
  if (typeof raw.restart_on_start === 'boolean') out.restart_on_start = raw.restart_on_start;
  return out;
}

/** Encode the state as a URL fragment (without the leading '#'). */
export function encodeViewState(state: ViewState): string {
  const payload: Record<string, unknown> = { v: VERSION };
  if (state.task) payload.task = state.task;
  if (Object.keys(state.filters).length) payload.filters = state.filters;
  if (Object.keys(state.options).length) payload.options = state.options;
  if (state.selectedPaths.length) payload.paths = state.selectedPaths;
  if (state.metric !== DEFAULT_METRIC) payload.metric = state.metric;
  if (state.openSequenceId !== null) payload.open = state.openSequenceId;
  if (state.history.length) payload.history = state.history;
  if (state.favorites.length) payload.favorites = state.favorites;
  return `${FRAGMENT_KEY}=${encodeURIComponent(JSON.stringify(payload))}`;
}

/**
 * Decode a URL fragment back into a view state.
 * Accepts the fragment with or without its leading '#'. Anything that is
 * not a well-formed encoding of a known version decodes to the default
 * state rather than throwing; individual malformed fields are dropped.
 */
export function decodeViewState(fragment: string): ViewState {
  const state = defaultViewState();
  const raw = fragment.startsWith('#') ? fragment.slice(1) : fragment;
  const params = new URLSearchParams(raw);
  const encoded = params.get(FRAGMENT_KEY);
  if (!encoded) return state;

  let payload: Record<string, unknown>;
  try {
    const parsed: unknown = JSON.parse(decodeURIComponent(encoded));
    if (typeof parsed !== 'object' || parsed === null) return state;
    payload = parsed as Record<string, unknown>;
  } catch {
    return state;
  }
  if (payload.v !== VERSION) return state;

  if (isTask(payload.task)) {
    state.task = { start_element: payload.task.start_element, end_element: payload.task.end_element };
  }
  state.filters = cleanFilters(payload.filters);
  state.options = cleanOptions(payload.options);
  if (isPathList(payload.paths)) state.selectedPaths = payload.paths;
  if (isMetric(payload.metric)) state.metric = payload.metric;
  if (typeof payload.open === 'string') state.openSequenceId = payload.open;
  if (isStringArray(payload.history)) state.history = payload.history;
  if (isStringArray(payload.favorites)) {
    state.favorites = [...new Set(payload.favorites)];
  }
  return state;
}

/** Build a full shareable URL for the given page location and state. */
export function shareLink(locationHref: string, state: ViewState): string {
  const base = locationHref.split('#')[0];
  return `${base}#${encodeViewState(state)}`;
}
