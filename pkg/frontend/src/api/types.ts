/**
 * Wire types for the analytics service JSON contract.
 * Field names are snake_case because they mirror the HTTP payloads verbatim;
 * every interface here corresponds one-to-one to a response or request body.
 */

/** Gaze target region: the road, the touchscreen, or anything else. */
export type Aoi = 'road' | 'center_stack' | 'other';

/** Touch gesture kinds as they appear in interaction events. */
export type Gesture = 'tap' | 'double_tap' | 'long_press' | 'drag' | 'swipe';

/** Per-sequence metrics selectable for flow comparison. */
export type MetricName =
  | 'time_on_task'
  | 'n_interactions'
  | 'glance_count_offroad'
  | 'total_glance_duration_offroad'
  | 'mean_glance_duration_offroad'
  | 'long_glance_count'
  | 'mean_speed';

/** Analysis scope: sequences start at one element and end at another. */
export interface TaskDefinition {
  start_element: string;
  end_element: string;
}

/** Optional corpus and flow-table narrowing sent with analysis requests. */
export interface FilterSpec {
  car_models?: string[];
  software_versions?: string[];
  screen_sizes?: string[];
  date_range?: [string, string];
  min_support?: number;
  top_n?: number;
}

/** Sequence extraction tuning. */
export interface ExtractionOptions {
  max_gap?: number | null;
  restart_on_start?: boolean;
}

export interface KpisResponse {
  snapshot_id: number;
  trip_count: number;
  interaction_count: number;
  vehicle_count: number;
  glance_hours: number;
  date_min: string | null;
  date_max: string | null;
}

/** One concept-database entry mapping an element id to display metadata. */
export interface ConceptEntry {
  element_id: string;
  label: string;
  screen_id: string;
  description: string;
}

export interface ElementsResponse {
  snapshot_id: number;
  elements: ConceptEntry[];
}

/** Aggregate statistics for one flow (all sequences sharing a path). */
export interface FlowRow {
  path: string[];
  count: number;
  share: number;
  avg_duration: number;
  total_interactions_per_seq: number;
  edge_mean_dt: number[];
  gesture_distribution: Partial<Record<Gesture, number>>;
}

export interface SankeyNodeRef {
  depth: number;
  element_id: string;
}

export interface SankeyNode extends SankeyNodeRef {
  count: number;
}

export interface SankeyEdge {
  from: SankeyNodeRef;
  to: SankeyNodeRef;
  weight: number;
  mean_dt: number;
}

export interface SankeyGraph {
  nodes: SankeyNode[];
  edges: SankeyEdge[];
}

export interface AnalysisRequest {
  task?: TaskDefinition;
  recording?: string[];
  filters?: FilterSpec;
  options?: ExtractionOptions;
}

export interface AnalysisResponse {
  snapshot_id: number;
  task: TaskDefinition;
  flow_table: FlowRow[];
  sankey: SankeyGraph;
  totals: {
    sequences_matched: number;
    trips_scanned: number;
  };
}

export interface CompareRequest extends AnalysisRequest {
  paths: string[][];
  metric: MetricName;
}

/** One dot in a box plot; the id addresses the sequence-detail endpoint. */
export interface BoxPlotPoint {
  sequence_id: string;
  value: number;
}

export interface BoxPlot {
  path: string[];
  metric: MetricName;
  n: number;
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
  whisker_low: number;
  whisker_high: number;
  outliers: BoxPlotPoint[];
  points: BoxPlotPoint[];
}

export interface CompareResponse {
  snapshot_id: number;
  task: TaskDefinition;
  metric: MetricName;
  sankey: SankeyGraph;
  box_plots: BoxPlot[];
}

export interface SequenceMetrics {
  sequence_id: string;
  time_on_task: number;
  n_interactions: number;
  glance_count_offroad: number;
  total_glance_duration_offroad: number;
  long_glance_count: number;
  mean_glance_duration_offroad: number | null;
  mean_speed: number | null;
}

export interface GlanceSpan {
  t_start: number;
  duration: number;
}

export interface DrivingPoint {
  t: number;
  speed: number;
  steering_angle: number;
}

export interface InteractionMarker {
  t: number;
  element_id: string;
  gesture: Gesture;
}

export interface Timeline {
  sequence_id: string;
  window: [number, number];
  glance_lanes: Record<Aoi, GlanceSpan[]>;
  driving_series: DrivingPoint[];
  interaction_markers: InteractionMarker[];
}

export interface SequenceDetailResponse {
  snapshot_id: number;
  sequence_id: string;
  trip_id: string;
  metrics: SequenceMetrics;
  timeline: Timeline;
}

/** Every metric the comparison picker offers, in display order. */
export const METRICS: readonly MetricName[] = [
  'time_on_task',
  'n_interactions',
  'glance_count_offroad',
  'total_glance_duration_offroad',
  'mean_glance_duration_offroad',
  'long_glance_count',
  'mean_speed',
];
