"""Rankings with one change point per vertex, found by alternating exact solves.

With change points fixed, the best ranks before and after them form a
static problem over two copies of every vertex.  With the two ranks of
every vertex fixed, the best change points come from a 0/1 labeling problem
over the active pairs.  :func:`solve_seg` alternates the two until the score
stops going down.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from . import gen_agony
from .graph import TemporalGraph
from .metrics import score
from .ranking import NO_CHANGE, RankSegmentation
from .reductions import extract_segmentation, extract_two_level, penalty_quads, ranks_to_gen, tau_to_gen

IntArray = npt.NDArray[np.int64]


@dataclass(eq=False)
class SegState:
    """Best segmentation found and its score.

    ``iteration`` is the iteration that produced it, ``iterations`` the
    number run, and ``history`` the score after every half-step.
    """

    segmentation: RankSegmentation
    score: int
    iteration: int
    history: list[int] = field(default_factory=list)
    iterations: int = 0


def median_init(graph: TemporalGraph) -> IntArray:
    """Lower median of each vertex's incident edge timestamps, duplicates kept.

    Vertices without edges get the earliest timestamp of the graph (or 0).
    """
    fallback = int(graph.times[0]) if len(graph.times) else 0
    # a self-loop counts once, as in TemporalGraph.incident_timestamps
    other = graph.sources != graph.targets
    ends = np.concatenate([graph.sources, graph.targets[other]])
    stamps = np.concatenate([graph.timestamps, graph.timestamps[other]])
    order = np.lexsort((stamps, ends))
    ends, stamps = ends[order], stamps[order]
    count = np.bincount(ends, minlength=graph.n)
    start = np.concatenate([[0], np.cumsum(count)[:-1]]).astype(np.int64)
    tau = np.full(graph.n, fallback, dtype=np.int64)
    has = count > 0
    tau[has] = stamps[start[has] + (count[has] - 1) // 2]
    return tau


def change2ranks(graph: TemporalGraph, tau, k: int | None = None) -> tuple[RankSegmentation, int]:
    """Optimal ranks before and after fixed change points ``tau``.

    ``tau`` is an array by vertex id or a mapping from labels.  Returns the
    segmentation and its score.
    """
    inst, nodes = tau_to_gen(graph, tau, k)
    ranking = gen_agony.solve(inst)
    seg = extract_two_level(graph, ranking, nodes, tau)
    s = score(graph, seg)
    assert s == ranking.objective
    return seg, s


def ranks2change(graph: TemporalGraph, r1, r2) -> tuple[RankSegmentation, int]:
    """Optimal change points for fixed ranks ``r1`` (before) and ``r2`` (after)."""
    inst, nodes = ranks_to_gen(graph, r1, r2)
    ranking = gen_agony.solve(inst)
    seg = extract_segmentation(graph, ranking, nodes, r1, r2)
    s = score(graph, seg)
    assert s == ranking.objective + int(penalty_quads(graph, r1, r2).p01.sum())
    return seg, s


def solve_seg(
    graph: TemporalGraph,
    k: int | None = None,
    max_iters: int = 50,
    init: IntArray | Mapping | None = None,
) -> SegState:
    """Alternate :func:`change2ranks` and :func:`ranks2change` from ``init``
    (median timestamps by default).

    One iteration is a change2ranks step followed by a ranks2change step.
    The loop stops after ``max_iters`` iterations or as soon as an iteration
    does not strictly lower the score.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    tau = median_init(graph) if init is None else _from_mapping(graph, init)
    history: list[int] = []
    best: SegState | None = None
    previous = None
    for it in range(1, max_iters + 1):
        seg, s = change2ranks(graph, tau, k)
        history.append(s)
        seg, s = ranks2change(graph, seg.r1, seg.r2)
        history.append(s)
        if best is None or s < best.score:
            best = SegState(seg, s, it, history)
        best.iterations = it
        # vertices left constant keep the change point they had
        tau = np.where(seg.changed, seg.tau, tau)
        if previous is not None and s >= previous:
            break
        previous = s
    return best


def _from_mapping(graph: TemporalGraph, tau) -> IntArray:
    if isinstance(tau, Mapping):
        out = median_init(graph)
        for v, t in tau.items():
            out[graph.vertex(v)] = int(t)
        return out
    return np.asarray(tau, dtype=np.int64)


__all__ = ["NO_CHANGE", "SegState", "median_init", "change2ranks", "ranks2change", "solve_seg"]
