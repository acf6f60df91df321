"""Reductions from temporal ranking problems to generalized agony.

Each ``*_to_gen`` builder returns the static instance together with a
:class:`NodeMap` locating the auxiliary nodes ``bottom``/``top`` and the
nodes standing for vertices, active pairs or vertex copies.  The matching
``extract_*`` function turns an optimal (or any feasible) ranking of the
static instance back into ranks for the temporal graph.

All arcs with infinite capacity are hard constraints
``rank[u] + b <= rank[v]``; the ``bottom``/``top`` gadget uses them to
confine ranks to ``[rank[bottom], rank[bottom] + k - 1]``.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from .gen_agony import GenGraph, GenRanking
from .graph import TemporalEdge, TemporalGraph
from .ranking import NO_CHANGE, RankAssignment, RankSegmentation

IntArray = npt.NDArray[np.int64]


@dataclass(frozen=True, eq=False)
class NodeMap:
    """Where things live in a reduced instance.

    Only the field matching the reduction is set: ``vertex`` (static),
    ``pair`` (fluctuation and change-point search) or ``first``/``second``
    (the two copies of each vertex for fixed change points).
    """

    bottom: int
    top: int
    vertex: IntArray | None = None
    pair: IntArray | None = None
    first: IntArray | None = None
    second: IntArray | None = None


class PenaltyQuad(NamedTuple):
    """Penalties of one edge for the four (tail, head) choices of low/high rank.

    Index ``0`` picks ``min(r1, r2)`` of the endpoint, ``1`` picks the max.
    """

    p00: int
    p01: int
    p10: int
    p11: int


def _check_levels(k: int | None) -> None:
    if k is not None and k < 1:
        raise ValueError(f"level cap k must be at least 1, got {k}")


def _level_gadget(nodes: IntArray, bottom: int, top: int, k: int) -> list[tuple]:
    return [
        (np.full(len(nodes), bottom), nodes, 0, 0, True),
        (nodes, top, 0, 0, True),
        ([top], bottom, 0, 1 - k, True),
    ]


def static_to_gen(graph: TemporalGraph, k: int | None = None) -> tuple[GenGraph, NodeMap]:
    """Constant ranking: parallel edges merged over all timestamps, offset 1."""
    _check_levels(k)
    n = graph.n
    bottom, top = n, n + 1
    key = graph.sources * max(n, 1) + graph.targets
    uniq, inverse = np.unique(key, return_inverse=True)
    weight = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(weight, inverse.reshape(-1), graph.weights)
    blocks = [(uniq // max(n, 1), uniq % max(n, 1), weight, 1, False)]
    vertices = np.arange(n, dtype=np.int64)
    if k is not None:
        blocks += _level_gadget(vertices, bottom, top, k)
    return GenGraph.concat(n + 2, blocks), NodeMap(bottom, top, vertex=vertices)


def extract_static(graph: TemporalGraph, ranking: GenRanking, nodes: NodeMap) -> RankAssignment:
    rank = ranking.rank[nodes.vertex] - ranking.rank[nodes.bottom]
    isolated = np.diff(graph.pairs.offsets) == 0
    rank[isolated] = 0
    return RankAssignment.constant(graph, rank)


def fluc_to_gen(graph: TemporalGraph, lam: int, k: int | None = None) -> tuple[GenGraph, NodeMap]:
    """One node per active pair; edges penalized at their own timestamp,
    consecutive pairs of a vertex tied by two ``lam``-capacity arcs.

    Arc order: one arc per edge, then for each consecutive pair the forward
    and backward arc interleaved, then the level gadget.
    """
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    _check_levels(k)
    p = graph.pairs
    size = len(p)
    bottom, top = size, size + 1
    first = p.consecutive
    second = first + 1
    tie_tails = np.stack([first, second], axis=1).reshape(-1)
    tie_heads = np.stack([second, first], axis=1).reshape(-1)
    blocks = [
        (p.edge_source, p.edge_target, graph.weights, 1, False),
        (tie_tails, tie_heads, int(lam), 0, False),
    ]
    pairs = np.arange(size, dtype=np.int64)
    if k is not None:
        blocks += _level_gadget(pairs, bottom, top, k)
    return GenGraph.concat(size + 2, blocks), NodeMap(bottom, top, pair=pairs)


def extract_fluc(graph: TemporalGraph, ranking: GenRanking, nodes: NodeMap) -> RankAssignment:
    return RankAssignment(graph, ranking.rank[nodes.pair] - ranking.rank[nodes.bottom])


def _tau_array(graph: TemporalGraph, tau) -> IntArray:
    if isinstance(tau, Mapping):
        lookup = {graph.vertex(v): int(t) for v, t in tau.items()}
        missing = [graph.labels[v] for v in range(graph.n) if v not in lookup]
        if missing:
            raise ValueError(f"change points missing for {missing[:5]}")
        return np.array([lookup[v] for v in range(graph.n)], dtype=np.int64)
    arr = np.asarray(tau, dtype=np.int64)
    if arr.shape != (graph.n,):
        raise ValueError("need one change point per vertex")
    return arr


def tau_to_gen(graph: TemporalGraph, tau, k: int | None = None) -> tuple[GenGraph, NodeMap]:
    """Two copies per vertex; an edge at ``t`` attaches to copy 1 of an
    endpoint ``x`` when ``t < tau[x]`` and to copy 2 otherwise.

    ``tau`` is an array indexed by vertex id or a mapping from labels/ids.
    """
    _check_levels(k)
    tau = _tau_array(graph, tau)
    n = graph.n
    bottom, top = 2 * n, 2 * n + 1
    t = graph.timestamps
    tails = np.where(t < tau[graph.sources], graph.sources, graph.sources + n)
    heads = np.where(t < tau[graph.targets], graph.targets, graph.targets + n)
    blocks = [(tails, heads, graph.weights, 1, False)]
    copies = np.arange(2 * n, dtype=np.int64)
    if k is not None:
        blocks += _level_gadget(copies, bottom, top, k)
    nodes = NodeMap(bottom, top, first=copies[:n], second=copies[n:])
    return GenGraph.concat(2 * n + 2, blocks), nodes


def extract_two_level(graph: TemporalGraph, ranking: GenRanking, nodes: NodeMap, tau) -> RankSegmentation:
    """Ranks before/after the fixed change points.

    A copy that no edge touches carries no information; its rank is set to
    the other copy's so the vertex does not report a spurious change.
    """
    tau = _tau_array(graph, tau)
    base = ranking.rank[nodes.bottom]
    r1 = ranking.rank[nodes.first] - base
    r2 = ranking.rank[nodes.second] - base
    p = graph.pairs
    n = graph.n
    uses_first = np.zeros(n, dtype=bool)
    uses_second = np.zeros(n, dtype=bool)
    early = p.time < tau[p.vertex]
    uses_first[p.vertex[early]] = True
    uses_second[p.vertex[~early]] = True
    r1 = np.where(uses_first, r1, r2)
    r2 = np.where(uses_second, r2, r1)
    idle = ~uses_first & ~uses_second
    r1[idle] = r2[idle] = 0
    out_tau = np.where(r1 == r2, NO_CHANGE, tau)
    return RankSegmentation(r1, r2, out_tau)


def penalty_quad(edge: TemporalEdge, r1: Sequence[int], r2: Sequence[int]) -> PenaltyQuad:
    u, v, w = edge.source, edge.target, edge.weight
    lo_u, hi_u = min(r1[u], r2[u]), max(r1[u], r2[u])
    lo_v, hi_v = min(r1[v], r2[v]), max(r1[v], r2[v])
    return PenaltyQuad(
        p00=w * max(0, lo_u - lo_v + 1),
        p01=w * max(0, lo_u - hi_v + 1),
        p10=w * max(0, hi_u - lo_v + 1),
        p11=w * max(0, hi_u - hi_v + 1),
    )


def penalty_quads(graph: TemporalGraph, r1: IntArray, r2: IntArray) -> PenaltyQuad:
    """:func:`penalty_quad` for all edges at once; fields are arrays."""
    r1 = np.asarray(r1, dtype=np.int64)
    r2 = np.asarray(r2, dtype=np.int64)
    lo, hi = np.minimum(r1, r2), np.maximum(r1, r2)
    s, d, w = graph.sources, graph.targets, graph.weights
    return PenaltyQuad(
        p00=w * np.maximum(0, lo[s] - lo[d] + 1),
        p01=w * np.maximum(0, lo[s] - hi[d] + 1),
        p10=w * np.maximum(0, hi[s] - lo[d] + 1),
        p11=w * np.maximum(0, hi[s] - hi[d] + 1),
    )


def ranks_to_gen(graph: TemporalGraph, r1, r2) -> tuple[GenGraph, NodeMap]:
    """Instance whose 0/1 labels (rank minus ``rank[bottom]``) choose, per
    active pair, the low or the high rank of the vertex.

    Arc order: the four ``bottom``/``top`` blocks, the monotonicity chains,
    ``top -> v_t`` and ``v_t -> bottom`` (one per pair, zero capacity
    included), then one arc per edge.
    """
    r1 = np.asarray(r1, dtype=np.int64)
    r2 = np.asarray(r2, dtype=np.int64)
    if r1.shape != (graph.n,) or r2.shape != (graph.n,):
        raise ValueError("need r1 and r2 for every vertex")
    p = graph.pairs
    size = len(p)
    bottom, top = size, size + 1
    pairs = np.arange(size, dtype=np.int64)
    quad = penalty_quads(graph, r1, r2)

    into = np.zeros(size, dtype=np.int64)
    np.add.at(into, p.edge_target, quad.p00 - quad.p01)
    out = np.zeros(size, dtype=np.int64)
    np.add.at(out, p.edge_source, quad.p11 - quad.p01)
    cross = quad.p10 - quad.p00 - quad.p11 + quad.p01
    if (into < 0).any() or (out < 0).any() or (cross < 0).any():
        raise AssertionError("negative penalty capacity; penalty quads are inconsistent")

    first = p.consecutive
    second = first + 1
    rising = r2[p.vertex[first]] >= r1[p.vertex[first]]
    blocks = [
        (pairs, top, 0, 0, True),
        (np.full(size, bottom), pairs, 0, 0, True),
        ([top], bottom, 0, -1, True),
        ([bottom], top, 0, 1, True),
        (np.where(rising, first, second), np.where(rising, second, first), 0, 0, True),
        (np.full(size, top), pairs, into, 0, False),
        (pairs, bottom, out, 0, False),
        (p.edge_source, p.edge_target, cross, 0, False),
    ]
    return GenGraph.concat(size + 2, blocks), NodeMap(bottom, top, pair=pairs)


def extract_segmentation(graph: TemporalGraph, ranking: GenRanking, nodes: NodeMap, r1, r2) -> RankSegmentation:
    """Segmentation read off 0/1 labels: a vertex takes its low rank where
    the label is 0 and its high rank where it is 1; the change point is the
    first active timestamp whose label differs from the first one.

    Raises:
        ValueError: If labels leave ``{0, 1}`` or are not monotone in time.
    """
    r1 = np.asarray(r1, dtype=np.int64)
    r2 = np.asarray(r2, dtype=np.int64)
    p = graph.pairs
    label = ranking.rank[nodes.pair] - ranking.rank[nodes.bottom]
    if ((label != 0) & (label != 1)).any():
        raise ValueError("labels outside {0, 1}; ranking violates the bottom/top constraints")
    lo, hi = np.minimum(r1, r2), np.maximum(r1, r2)
    value = lo[p.vertex] + (hi - lo)[p.vertex] * label

    first = p.consecutive
    step = label[first + 1] - label[first]
    rising = r2[p.vertex[first]] >= r1[p.vertex[first]]
    if (rising & (step < 0)).any() or (~rising & (step > 0)).any():
        raise ValueError("labels are not monotone along a vertex timeline")

    n = graph.n
    has = np.diff(p.offsets) > 0
    start = p.offsets[:-1][has]
    stop = p.offsets[1:][has] - 1
    out_r1 = np.zeros(n, dtype=np.int64)
    out_r2 = np.zeros(n, dtype=np.int64)
    out_r1[has] = value[start]
    out_r2[has] = value[stop]
    tau = np.full(n, NO_CHANGE, dtype=np.int64)
    jumps = first[step != 0]
    tau[p.vertex[jumps]] = p.time[jumps + 1]
    tau[out_r1 == out_r2] = NO_CHANGE
    return RankSegmentation(out_r1, out_r2, tau)
