"""Sequence-to-graph read mapping: minimizer seeding and bitvector alignment."""

from ._core import (
    Error,
    Graph,
    Index,
    Mapper,
    align_to_sequence,
    find_minimizers,
    footprint,
    parse_gfa,
    perf_report,
    s2s_edit_distance,
    simulate_graph,
    sample_read,
)

__all__ = [
    "Error",
    "Graph",
    "Index",
    "Mapper",
    "align_to_sequence",
    "find_minimizers",
    "footprint",
    "parse_gfa",
    "perf_report",
    "s2s_edit_distance",
    "simulate_graph",
    "sample_read",
]
