"""Scores and summary statistics of rank assignments."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .graph import TemporalEdge, TemporalGraph
from .ranking import RankAssignment, RankSegmentation


def edge_penalty(edge: TemporalEdge, assignment: RankAssignment | RankSegmentation) -> int:
    """``w * max(0, r(u; t) - r(v; t) + 1)``."""
    ru = assignment.rank(edge.source, edge.timestamp)
    rv = assignment.rank(edge.target, edge.timestamp)
    return edge.weight * max(0, ru - rv + 1)


def _as_assignment(graph: TemporalGraph, assignment: RankAssignment | RankSegmentation) -> RankAssignment:
    if isinstance(assignment, RankSegmentation):
        return assignment.assignment(graph)
    return assignment


def score(graph: TemporalGraph, assignment: RankAssignment | RankSegmentation) -> int:
    """Total penalty of all edges."""
    a = _as_assignment(graph, assignment)
    ru, rv = a.endpoint_ranks()
    return int((graph.weights * np.maximum(ru - rv + 1, 0)).sum())


def _steps(graph: TemporalGraph, a: RankAssignment) -> tuple[np.ndarray, np.ndarray]:
    """Vertex and absolute rank change of each consecutive active-pair step."""
    p = graph.pairs
    i = p.consecutive
    return p.vertex[i], np.abs(a.values[i + 1] - a.values[i])


def flux(graph: TemporalGraph, assignment: RankAssignment | RankSegmentation, v: int | str) -> int:
    """Total absolute rank change of ``v`` over its consecutive active timestamps.

    Ranks are constant between active timestamps, so this equals the sum
    over the whole timeline.
    """
    v = graph.vertex(v)
    vals = [r for _, r in _as_assignment(graph, assignment).series(v)]
    return int(np.abs(np.diff(vals)).sum()) if len(vals) > 1 else 0


def total_flux(graph: TemporalGraph, assignment: RankAssignment | RankSegmentation) -> int:
    _, d = _steps(graph, _as_assignment(graph, assignment))
    return int(d.sum())


@dataclass
class RankingStats:
    score: int
    num_ranks: int
    avg_flux: float
    avg_maxdiff: float
    avg_change: float
    iterations: int | None = None
    runtime_ms: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)

    def to_text(self, timing: bool = True) -> str:
        """``key<TAB>value`` lines; ``-`` marks a missing value."""
        lines = []
        for key, value in self.as_dict().items():
            if key == "runtime_ms" and not timing:
                continue
            if value is None:
                text = "-"
            elif isinstance(value, float):
                text = f"{value:.6g}"
            else:
                text = str(value)
            lines.append(f"{key}\t{text}\n")
        return "".join(lines)


def stats(
    graph: TemporalGraph,
    assignment: RankAssignment | RankSegmentation,
    iterations: int | None = None,
    runtime_ms: float = 0.0,
) -> RankingStats:
    """Score, number of distinct ranks over active pairs, and per-vertex
    averages of fluctuation, max-min rank spread and number of changes.

    Averages run over all vertices; a vertex with fewer than two active
    timestamps contributes zeros.
    """
    a = _as_assignment(graph, assignment)
    n = graph.n
    vert, d = _steps(graph, a)
    fl = np.bincount(vert, weights=d, minlength=n)
    changes = np.bincount(vert, weights=(d > 0).astype(np.float64), minlength=n)
    p = graph.pairs
    spread = np.zeros(n)
    if len(p):
        hi = np.full(n, np.iinfo(np.int64).min, dtype=np.int64)
        lo = np.full(n, np.iinfo(np.int64).max, dtype=np.int64)
        np.maximum.at(hi, p.vertex, a.values)
        np.minimum.at(lo, p.vertex, a.values)
        has = np.diff(p.offsets) > 0
        spread[has] = hi[has] - lo[has]

    def mean(x: np.ndarray) -> float:
        return float(x.sum() / n) if n else 0.0

    return RankingStats(
        score=score(graph, a),
        num_ranks=len(np.unique(a.values)),
        avg_flux=mean(fl),
        avg_maxdiff=mean(spread),
        avg_change=mean(changes),
        iterations=iterations,
        runtime_ms=runtime_ms,
    )
