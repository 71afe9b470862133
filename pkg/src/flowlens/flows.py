"""Flow aggregation: grouping, statistics, filtering, Sankey, box plots.

A flow is the set of sequences sharing one exact element path. Shares are
always fractions of the unfiltered total for the task, so filtering the
flow table never silently rescales the remaining rows.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Mapping

from .extraction import SequenceSet
from .model import Flow, FilterSpec, Gesture, MetricKind, path_of


class IncompleteMetricsError(Exception):
    """A selected flow contains a sequence with no value for the chosen metric."""

    def __init__(self, sequence_id: str, metric: MetricKind):
        self.sequence_id = sequence_id
        self.metric = metric
        super().__init__(f'no value of metric "{metric.value}" for sequence "{sequence_id}"')


@dataclass(frozen=True, slots=True)
class FlowStats:
    """Aggregate statistics of one flow, as shown in the flow table."""

    path: tuple[str, ...]
    count: int
    share: float
    avg_duration: float
    total_interactions_per_seq: int
    edge_mean_dt: tuple[float, ...]
    gesture_distribution: Mapping[Gesture, float]

    def to_dict(self) -> dict:
        return {
            "path": list(self.path),
            "count": self.count,
            "share": self.share,
            "avg_duration": self.avg_duration,
            "total_interactions_per_seq": self.total_interactions_per_seq,
            "edge_mean_dt": list(self.edge_mean_dt),
            "gesture_distribution": {
                g.value: self.gesture_distribution[g]
                for g in Gesture
                if g in self.gesture_distribution
            },
        }


@dataclass(frozen=True, slots=True)
class SankeyNode:
    """One visited (depth, element) position with its traversal count."""

    depth: int
    element_id: str
    count: int

    def to_dict(self) -> dict:
        return {"depth": self.depth, "element_id": self.element_id, "count": self.count}


@dataclass(frozen=True, slots=True)
class SankeyEdge:
    """A transition between adjacent depths, weighted by traversals.

    mean_dt is the count-weighted mean inter-interaction time of the flows
    contributing to this edge.
    """

    depth: int
    from_element: str
    to_element: str
    weight: int
    mean_dt: float

    def to_dict(self) -> dict:
        return {
            "from": {"depth": self.depth, "element_id": self.from_element},
            "to": {"depth": self.depth + 1, "element_id": self.to_element},
            "weight": self.weight,
            "mean_dt": self.mean_dt,
        }


@dataclass(frozen=True, slots=True)
class SankeyGraph:
    """Step-aligned flow graph; nodes are keyed by (depth, element)."""

    nodes: tuple[SankeyNode, ...]
    edges: tuple[SankeyEdge, ...]

    def to_dict(self) -> dict:
        return {
            "nodes": [n.to_dict() for n in self.nodes],
            "edges": [e.to_dict() for e in self.edges],
        }


@dataclass(frozen=True, slots=True)
class BoxPlotStats:
    """Five-number summary of one flow under one metric, with drill-down ids.

    outliers are exactly the points outside the 1.5 IQR fences; points lists
    every (sequence_id, value) pair so each dot remains clickable.
    """

    path: tuple[str, ...]
    metric: MetricKind
    n: int
    min: float
    q1: float
    median: float
    q3: float
    max: float
    whisker_low: float
    whisker_high: float
    outliers: tuple[tuple[str, float], ...]
    points: tuple[tuple[str, float], ...]

    def to_dict(self, id_map: Callable[[str], str] = lambda s: s) -> dict:
        return {
            "path": list(self.path),
            "metric": self.metric.value,
            "n": self.n,
            "min": self.min,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "max": self.max,
            "whisker_low": self.whisker_low,
            "whisker_high": self.whisker_high,
            "outliers": [
                {"sequence_id": id_map(sid), "value": value} for sid, value in self.outliers
            ],
            "points": [
                {"sequence_id": id_map(sid), "value": value} for sid, value in self.points
            ],
        }


def group_into_flows(sequence_set: SequenceSet) -> list[Flow]:
    """Partition sequences by exact path; order by count descending, then path."""
    by_path: dict[tuple[str, ...], list] = {}
    for seq in sequence_set.sequences:
        by_path.setdefault(path_of(seq), []).append(seq)
    flows = [Flow(path=path, sequences=tuple(seqs)) for path, seqs in by_path.items()]
    flows.sort(key=lambda f: (-len(f.sequences), f.path))
    return flows


def flow_statistics(flows: list[Flow]) -> list[FlowStats]:
    """Per-flow aggregates; shares are fractions of the total over all given flows."""
    total = sum(len(f.sequences) for f in flows)
    stats: list[FlowStats] = []
    for flow in flows:
        count = len(flow.sequences)
        durations = [seq.t_last - seq.t_first for seq in flow.sequences]
        steps = len(flow.path) - 1
        edge_mean_dt = tuple(
            sum(seq.interactions[i + 1].t - seq.interactions[i].t for seq in flow.sequences)
            / count
            for i in range(steps)
        )
        gesture_counts = Counter(
            ev.gesture for seq in flow.sequences for ev in seq.interactions
        )
        n_gestures = sum(gesture_counts.values())
        stats.append(
            FlowStats(
                path=flow.path,
                count=count,
                share=count / total,
                avg_duration=sum(durations) / count,
                total_interactions_per_seq=len(flow.path),
                edge_mean_dt=edge_mean_dt,
                gesture_distribution={
                    g: gesture_counts[g] / n_gestures for g in Gesture if g in gesture_counts
                },
            )
        )
    return stats


def apply_flow_filters(stats: list[FlowStats], filters: FilterSpec) -> list[FlowStats]:
    """Drop flows below min_support, then keep the top_n by count.

    Shares are not recomputed; they stay fractions of the unfiltered total.
    """
    kept = [fs for fs in stats if fs.share >= filters.min_support]
    if filters.top_n is not None:
        kept = sorted(kept, key=lambda fs: -fs.count)[: filters.top_n]
    return kept


def build_sankey(stats: list[FlowStats]) -> SankeyGraph:
    """Overlay the given flows into one step-aligned graph.

    Each flow adds its count to every (depth, element) it visits and to every
    adjacent-depth edge; edge mean_dt is the count-weighted mean of the
    contributing flows' inter-interaction times.
    """
    node_counts: dict[tuple[int, str], int] = {}
    edge_weights: dict[tuple[int, str, str], int] = {}
    edge_dt_sums: dict[tuple[int, str, str], float] = {}

    for fs in stats:
        for depth, element in enumerate(fs.path):
            node_counts[(depth, element)] = node_counts.get((depth, element), 0) + fs.count
        for depth in range(len(fs.path) - 1):
            key = (depth, fs.path[depth], fs.path[depth + 1])
            edge_weights[key] = edge_weights.get(key, 0) + fs.count
            edge_dt_sums[key] = edge_dt_sums.get(key, 0.0) + fs.count * fs.edge_mean_dt[depth]

    nodes = tuple(
        SankeyNode(depth, element, count)
        for (depth, element), count in sorted(node_counts.items())
    )
    edges = tuple(
        SankeyEdge(depth, frm, to, weight, edge_dt_sums[(depth, frm, to)] / weight)
        for (depth, frm, to), weight in sorted(edge_weights.items())
    )
    return SankeyGraph(nodes=nodes, edges=edges)


def quantile(sorted_values: list[float], p: float) -> float:
    """Linear-interpolation quantile at position p * (n - 1) of sorted data."""
    if not sorted_values:
        raise ValueError("quantile of empty data")
    pos = p * (len(sorted_values) - 1)
    lo = math.floor(pos)
    hi = math.ceil(pos)
    frac = pos - lo
    return sorted_values[lo] * (1.0 - frac) + sorted_values[hi] * frac


def boxplot_stats(
    flows: list[Flow],
    metric: MetricKind,
    metrics_per_sequence: Mapping[str, float],
) -> list[BoxPlotStats]:
    """Five-number summaries for the selected flows under one metric.

    Quartiles interpolate linearly at p * (n - 1); whiskers sit on the most
    extreme data points within 1.5 IQR of the quartiles; everything outside
    is an outlier. Raises IncompleteMetricsError if any member sequence has
    no value (e.g. a mean over zero samples).
    """
    result: list[BoxPlotStats] = []
    for flow in flows:
        points: list[tuple[str, float]] = []
        for seq in flow.sequences:
            if seq.sequence_id not in metrics_per_sequence:
                raise IncompleteMetricsError(seq.sequence_id, metric)
            points.append((seq.sequence_id, float(metrics_per_sequence[seq.sequence_id])))
        points.sort(key=lambda p: (p[1], p[0]))
        values = [value for _, value in points]

        q1 = quantile(values, 0.25)
        median = quantile(values, 0.5)
        q3 = quantile(values, 0.75)
        iqr = q3 - q1
        fence_low = q1 - 1.5 * iqr
        fence_high = q3 + 1.5 * iqr
        # At least one data point always lies within the fences (the fences
        # bracket [q1, q3], which brackets a data point for any n >= 1).
        within = [v for v in values if fence_low <= v <= fence_high]
        result.append(
            BoxPlotStats(
                path=flow.path,
                metric=metric,
                n=len(values),
                min=values[0],
                q1=q1,
                median=median,
                q3=q3,
                max=values[-1],
                whisker_low=min(within),
                whisker_high=max(within),
                outliers=tuple(
                    (sid, v) for sid, v in points if v < fence_low or v > fence_high
                ),
                points=tuple(points),
            )
        )
    return result
