"""Task-scoped user-flow analytics for in-vehicle touchscreen telemetry.

The pipeline: ingest event logs into an immutable corpus snapshot, extract
the interaction sequences matching a task definition, aggregate them into
flows with usability and distraction metrics, and serve the results (flow
table, Sankey graph, box-plot comparisons, sequence timelines) over HTTP.
"""

__version__ = "0.1.0"
