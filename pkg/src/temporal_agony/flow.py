"""Exact minimum-cost circulation on integer networks.

The solver is a primal-dual method:

1. every negative-cost arc is saturated, which leaves a pseudo-flow whose
   residual network has non-negative costs, together with node imbalances;
2. the imbalances are cancelled phase by phase.  A phase computes
   multi-source shortest distances from the excess nodes under reduced costs,
   raises the node potentials accordingly, and sends a maximum flow from the
   excess nodes to the deficit nodes through the arcs of zero reduced cost.

Integer costs mean every phase increases the source-to-deficit distance by at
least one, so the number of phases is bounded by the largest potential; for
agony instances that is roughly the number of rank levels.  Dijkstra and the
inner maximum flow are delegated to :mod:`scipy.sparse.csgraph`.

On return the flow is optimal and the potentials certify it: every residual
arc has non-negative reduced cost.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import numpy.typing as npt
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra, maximum_flow

IntArray = npt.NDArray[np.int64]

# scipy's max-flow works on int32 capacities
_CAP_LIMIT = np.iinfo(np.int32).max


class Circulation(NamedTuple):
    flow: IntArray
    potential: IntArray
    phases: int


class Residual(NamedTuple):
    source: IntArray
    target: IntArray
    cost: IntArray
    capacity: IntArray
    arc: IntArray
    direction: IntArray  # +1 forward, -1 backward


def node_sum(index: IntArray, values: IntArray, n: int) -> IntArray:
    out = np.zeros(n, dtype=np.int64)
    np.add.at(out, index, values)
    return out


def residual_network(
    tails: IntArray, heads: IntArray, caps: IntArray, costs: IntArray, flow: IntArray
) -> Residual:
    fwd = np.flatnonzero(flow < caps)
    bwd = np.flatnonzero(flow > 0)
    return Residual(
        source=np.concatenate([tails[fwd], heads[bwd]]),
        target=np.concatenate([heads[fwd], tails[bwd]]),
        cost=np.concatenate([costs[fwd], -costs[bwd]]),
        capacity=np.concatenate([caps[fwd] - flow[fwd], flow[bwd]]),
        arc=np.concatenate([fwd, bwd]),
        direction=np.concatenate([np.ones(len(fwd), np.int64), -np.ones(len(bwd), np.int64)]),
    )


def shortest_distances(
    n: int, source: IntArray, target: IntArray, weight: IntArray, origins: IntArray
) -> npt.NDArray[np.float64]:
    """Multi-source Dijkstra over non-negative integer weights; parallel arcs allowed."""
    if len(source):
        # keep the cheapest arc of each parallel bundle
        order = np.lexsort((weight, target, source))
        s, t, w = source[order], target[order], weight[order]
        first = np.ones(len(s), dtype=bool)
        first[1:] = (s[1:] != s[:-1]) | (t[1:] != t[:-1])
        s, t, w = s[first], t[first], w[first]
    else:
        s = t = w = np.zeros(0, dtype=np.int64)
    graph = csr_matrix((w.astype(np.float64), (s, t)), shape=(n, n))
    return dijkstra(graph, directed=True, indices=origins, min_only=True)


def _push_admissible(n: int, res: Residual, admissible: IntArray, excess: IntArray) -> IntArray:
    """Max flow from excess to deficit nodes over admissible residual arcs.

    Returns the amount pushed along each admissible residual arc.
    """
    src, dst = n, n + 1
    frm, to, cap = res.source[admissible], res.target[admissible], res.capacity[admissible]
    pos = np.flatnonzero(excess > 0)
    neg = np.flatnonzero(excess < 0)
    rows = np.concatenate([frm, np.full(len(pos), src), neg])
    cols = np.concatenate([to, pos, np.full(len(neg), dst)])
    vals = np.concatenate([cap, excess[pos], -excess[neg]])
    graph = csr_matrix((vals, (rows, cols)), shape=(n + 2, n + 2), dtype=np.int64)
    graph.sum_duplicates()
    np.minimum(graph.data, _CAP_LIMIT, out=graph.data)
    graph = csr_matrix((graph.data.astype(np.int32), graph.indices, graph.indptr), shape=graph.shape)
    net = maximum_flow(graph, src, dst, method="dinic").flow

    # scipy reports one antisymmetric net flow per node pair; split it over
    # the parallel residual arcs of that pair, filling them in order
    pair_flow = np.asarray(net[frm, to]).reshape(-1).astype(np.int64)
    np.maximum(pair_flow, 0, out=pair_flow)
    key = frm * (n + 2) + to
    order = np.argsort(key, kind="stable")
    k_sorted, c_sorted = key[order], cap[order]
    start = np.ones(len(order), dtype=bool)
    start[1:] = k_sorted[1:] != k_sorted[:-1]
    cum = np.cumsum(c_sorted)
    group_base = np.maximum.accumulate(np.where(start, cum - c_sorted, 0))
    before = cum - c_sorted - group_base
    sent = np.clip(pair_flow[order] - before, 0, c_sorted)
    pushed = np.empty_like(sent)
    pushed[order] = sent
    return pushed


def min_cost_circulation(
    n: int, tails: IntArray, heads: IntArray, caps: IntArray, costs: IntArray
) -> Circulation:
    """Minimum-cost circulation with ``0 <= flow <= caps``.

    All inputs are integer arrays; capacities must be finite and
    non-negative, costs may be negative.  Self-loops are allowed and are
    saturated exactly when their cost is negative.
    """
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    caps = np.asarray(caps, dtype=np.int64)
    costs = np.asarray(costs, dtype=np.int64)
    if (caps < 0).any():
        raise ValueError("capacities must be non-negative")

    flow = np.where(costs < 0, caps, 0).astype(np.int64)
    loop = tails == heads
    live = np.flatnonzero(~loop & (caps > 0))
    t, h, c, w = tails[live], heads[live], caps[live], costs[live]
    f = flow[live]
    excess = node_sum(h, f, n) - node_sum(t, f, n)
    potential = np.zeros(n, dtype=np.int64)

    phases = 0
    while (excess > 0).any():
        phases += 1
        res = residual_network(t, h, c, w, f)
        reduced = res.cost + potential[res.source] - potential[res.target]
        dist = shortest_distances(n, res.source, res.target, reduced, np.flatnonzero(excess > 0))
        cap_d = dist[excess < 0].min()
        if not np.isfinite(cap_d):
            raise RuntimeError("imbalance cannot be routed; network is inconsistent")
        potential += np.minimum(dist, cap_d).astype(np.int64)

        reduced = res.cost + potential[res.source] - potential[res.target]
        admissible = np.flatnonzero(reduced == 0)
        pushed = _push_admissible(n, res, admissible, excess)
        moved = np.flatnonzero(pushed)
        if not len(moved):
            raise RuntimeError("primal-dual phase made no progress")
        arc = res.arc[admissible[moved]]
        np.add.at(f, arc, pushed[moved] * res.direction[admissible[moved]])
        frm, to = res.source[admissible[moved]], res.target[admissible[moved]]
        excess += node_sum(to, pushed[moved], n) - node_sum(frm, pushed[moved], n)

    flow[live] = f
    return Circulation(flow=flow, potential=potential, phases=phases)
