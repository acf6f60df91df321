"""Generalized static agony.

An instance is a static graph whose arcs ``(u, v, c, b)`` carry a capacity
``c`` (non-negative integer, or infinite) and an integer offset ``b``.  The
task is to find integer ranks minimizing

    sum over arcs of  max(c * (rank[u] - rank[v] + b), 0)

with ``0 * inf = 0``, so an infinite arc is the hard constraint
``rank[u] + b <= rank[v]``.

The problem is the LP dual of a capacitated circulation: one flow arc per
instance arc with capacity ``c`` and unit cost ``-b``.  We solve the
circulation exactly and read optimal ranks off the residual network as
negated shortest-path distances from a virtual source joined to every node by
zero-cost arcs.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Union

import numpy as np
import numpy.typing as npt
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .flow import min_cost_circulation, residual_network, shortest_distances

IntArray = npt.NDArray[np.int64]
BoolArray = npt.NDArray[np.bool_]

INFINITE = math.inf
Capacity = Union[int, float]


class InfeasibleError(ValueError):
    """The hard constraints of an instance contradict each other."""

    def __init__(self, cycle: list[int]):
        super().__init__(f"hard constraints contain a cycle with positive total offset (arcs {cycle})")
        self.cycle = cycle


@dataclass(frozen=True, eq=False)
class GenGraph:
    """Static instance ``(W, A)`` stored as parallel arc arrays.

    ``caps`` holds finite capacities; entries where ``infinite`` is set are
    ignored.  Use :meth:`from_arcs` to build from tuples with ``INFINITE``.
    """

    n_nodes: int
    tails: IntArray
    heads: IntArray
    caps: IntArray
    offsets: IntArray
    infinite: BoolArray
    names: Sequence[str] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        m = len(self.tails)
        if not all(len(a) == m for a in (self.heads, self.caps, self.offsets, self.infinite)):
            raise ValueError("arc arrays have different lengths")
        if m and (min(self.tails.min(), self.heads.min()) < 0 or max(self.tails.max(), self.heads.max()) >= self.n_nodes):
            raise ValueError("arc endpoint out of range")
        if (self.caps[~self.infinite] < 0).any():
            raise ValueError("capacities must be non-negative")

    @classmethod
    def from_arcs(
        cls,
        n_nodes: int,
        arcs: Iterable[tuple[int, int, Capacity, int]],
        names: Sequence[str] | None = None,
    ) -> GenGraph:
        arcs = list(arcs)
        inf = np.array([math.isinf(c) for _, _, c, _ in arcs], dtype=bool)
        return cls(
            n_nodes=n_nodes,
            tails=np.array([a[0] for a in arcs], dtype=np.int64),
            heads=np.array([a[1] for a in arcs], dtype=np.int64),
            caps=np.array([0 if math.isinf(a[2]) else int(a[2]) for a in arcs], dtype=np.int64),
            offsets=np.array([a[3] for a in arcs], dtype=np.int64),
            infinite=inf,
            names=names,
        )

    @classmethod
    def concat(cls, n_nodes: int, blocks: Iterable[tuple], names: Sequence[str] | None = None) -> GenGraph:
        """Assemble from blocks ``(tails, heads, caps, offsets, infinite)`` of broadcastable arrays."""
        parts: list[list[np.ndarray]] = [[], [], [], [], []]
        for tails, heads, caps, offsets, inf in blocks:
            tails = np.asarray(tails, dtype=np.int64).reshape(-1)
            size = len(tails)
            parts[0].append(tails)
            parts[1].append(np.broadcast_to(np.asarray(heads, dtype=np.int64), size))
            parts[2].append(np.broadcast_to(np.asarray(caps, dtype=np.int64), size))
            parts[3].append(np.broadcast_to(np.asarray(offsets, dtype=np.int64), size))
            parts[4].append(np.broadcast_to(np.asarray(inf, dtype=bool), size))
        arrays = [np.concatenate(p) if p else np.zeros(0, dtype=np.int64) for p in parts]
        return cls(n_nodes, *arrays[:4], arrays[4].astype(bool), names=names)

    @property
    def n_arcs(self) -> int:
        return len(self.tails)

    def arcs(self) -> list[tuple[int, int, Capacity, int]]:
        return [
            (int(u), int(v), INFINITE if inf else int(c), int(b))
            for u, v, c, b, inf in zip(self.tails, self.heads, self.caps, self.offsets, self.infinite)
        ]

    def name(self, node: int) -> str:
        return self.names[node] if self.names is not None else str(node)


@dataclass(frozen=True)
class Feasibility:
    ok: bool
    cycle: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class GenRanking:
    rank: IntArray
    objective: int


def check_feasible(graph: GenGraph) -> Feasibility:
    """Decide whether the infinite arcs admit integer ranks.

    The constraints ``rank[u] + b <= rank[v]`` are contradictory exactly when
    the infinite arcs contain a cycle with positive total offset.  We run
    round-based Bellman-Ford on weights ``-b``; when the predecessor graph
    closes a cycle, that cycle (as arc indices of ``graph``) is the witness.
    """
    arcs = np.flatnonzero(graph.infinite)
    if not len(arcs):
        return Feasibility(True)
    n = graph.n_nodes
    tails, heads, weight = graph.tails[arcs], graph.heads[arcs], -graph.offsets[arcs]
    dist = np.zeros(n, dtype=np.int64)
    pred = np.full(n, -1, dtype=np.int64)

    check_at = 1
    for rnd in range(1, n + 2):
        cand = dist[tails] + weight
        better = cand < dist[heads]
        if not better.any():
            return Feasibility(True)
        new = dist.copy()
        np.minimum.at(new, heads[better], cand[better])
        chosen = np.flatnonzero(better & (cand == new[heads]))
        pred[heads[chosen]] = chosen
        dist = new
        if rnd == check_at or rnd > n:
            check_at *= 2
            cycle = _pred_cycle(pred, tails, heads[chosen])
            if cycle:
                return Feasibility(False, [int(arcs[a]) for a in cycle])
    raise AssertionError("Bellman-Ford kept improving without a predecessor cycle")


def _pred_cycle(pred: IntArray, tails: IntArray, starts: IntArray) -> list[int]:
    n = len(pred)
    state = np.zeros(n, dtype=np.int8)  # 0 unseen, 1 on current walk, 2 done
    for start in starts:
        walk = []
        v = int(start)
        while v >= 0 and state[v] == 0:
            state[v] = 1
            walk.append(v)
            a = pred[v]
            v = int(tails[a]) if a >= 0 else -1
        if v >= 0 and state[v] == 1:
            # v closes a cycle; collect its arcs in forward order
            cycle = []
            u = v
            while True:
                a = int(pred[u])
                cycle.append(a)
                u = int(tails[a])
                if u == v:
                    break
            return cycle[::-1]
        for w in walk:
            state[w] = 2
    return []


def evaluate(graph: GenGraph, rank: Sequence[int] | IntArray) -> float:
    """Objective of ``rank``: an ``int``, or ``INFINITE`` if a hard constraint is violated."""
    rank = np.asarray(rank, dtype=np.int64)
    slack = rank[graph.tails] - rank[graph.heads] + graph.offsets
    if (slack[graph.infinite] > 0).any():
        return INFINITE
    fin = ~graph.infinite
    return int((graph.caps[fin] * np.maximum(slack[fin], 0)).sum())


def component_labels(graph: GenGraph) -> IntArray:
    """Weakly connected components over arcs that can carry a penalty."""
    live = graph.infinite | (graph.caps > 0)
    n = graph.n_nodes
    adj = csr_matrix(
        (np.ones(int(live.sum()), dtype=np.int8), (graph.tails[live], graph.heads[live])), shape=(n, n)
    )
    _, labels = connected_components(adj, directed=True, connection="weak")
    return labels.astype(np.int64)


def normalize(graph: GenGraph, rank: IntArray) -> IntArray:
    """Shift every weakly connected component so that its minimum rank is 0."""
    labels = component_labels(graph)
    low = np.full(labels.max() + 1 if len(labels) else 0, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(low, labels, rank)
    return rank - low[labels]


def solve(graph: GenGraph) -> GenRanking:
    """Optimal ranks and objective.

    Raises:
        InfeasibleError: If the hard constraints have no solution.
    """
    feas = check_feasible(graph)
    if not feas:
        raise InfeasibleError(feas.cycle)
    n = graph.n_nodes
    if n == 0:
        return GenRanking(np.zeros(0, dtype=np.int64), 0)

    # an optimal circulation decomposes into cycles each crossing a finite
    # arc, so no infinite arc ever needs more than the total finite capacity
    bound = int(graph.caps[~graph.infinite].sum()) + 1
    caps = np.where(graph.infinite, bound, graph.caps)
    costs = -graph.offsets
    circ = min_cost_circulation(n, graph.tails, graph.heads, caps, costs)

    # canonical ranks: negated distances from a virtual source in the
    # optimal residual network, computed by Dijkstra on reduced costs
    res = residual_network(graph.tails, graph.heads, caps, costs, circ.flow)
    pot = circ.potential
    top = int(pot.max())
    src = n
    source = np.concatenate([res.source, np.full(n, src)])
    target = np.concatenate([res.target, np.arange(n)])
    pot_ext = np.append(pot, top)
    reduced = np.concatenate([res.cost, np.zeros(n, dtype=np.int64)]) + pot_ext[source] - pot_ext[target]
    if (reduced < 0).any():
        raise AssertionError("potentials do not certify optimality")
    dist = shortest_distances(n + 1, source, target, reduced, np.array([src]))[:n]
    rank = -(dist.astype(np.int64) - top + pot)

    rank = normalize(graph, rank)
    objective = evaluate(graph, rank)
    dual = int((graph.offsets * circ.flow).sum())
    if objective != dual:
        raise AssertionError(f"duality gap: primal {objective} vs dual {dual}")
    return GenRanking(rank=rank, objective=int(objective))
