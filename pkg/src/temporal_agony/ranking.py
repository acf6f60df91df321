"""Rank assignments over a temporal graph."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .graph import TemporalGraph

IntArray = npt.NDArray[np.int64]

# change point meaning "never": t < NO_CHANGE for every timestamp
NO_CHANGE = int(np.iinfo(np.int64).max)


class RankAssignment:
    """Ranks ``r(v; t)``, stored at the active pairs of ``graph``.

    Between active timestamps the rank of a vertex stays at its latest
    active value; before the first active timestamp it takes the first
    value.  Vertices without edges take ``base[v]`` (0 unless given).
    """

    def __init__(self, graph: TemporalGraph, values: Sequence[int] | IntArray, base: IntArray | None = None):
        values = np.asarray(values, dtype=np.int64)
        if values.shape != (len(graph.pairs),):
            raise ValueError(f"expected {len(graph.pairs)} pair values, got shape {values.shape}")
        self.graph = graph
        self.values = values
        self.base = np.zeros(graph.n, dtype=np.int64) if base is None else np.asarray(base, dtype=np.int64)

    @classmethod
    def constant(cls, graph: TemporalGraph, ranks: Sequence[int] | IntArray) -> RankAssignment:
        ranks = np.asarray(ranks, dtype=np.int64)
        return cls(graph, ranks[graph.pairs.vertex], base=ranks)

    def __repr__(self) -> str:
        return f"RankAssignment(pairs={len(self.values)})"

    def _slice(self, v: int) -> slice:
        off = self.graph.pairs.offsets
        return slice(int(off[v]), int(off[v + 1]))

    def rank(self, v: int | str, t: int) -> int:
        v = self.graph.vertex(v)
        sl = self._slice(v)
        if sl.start == sl.stop:
            return int(self.base[v])
        times = self.graph.pairs.time[sl]
        i = int(np.searchsorted(times, t, side="right")) - 1
        return int(self.values[sl][max(i, 0)])

    def series(self, v: int | str) -> list[tuple[int, int]]:
        """``(timestamp, rank)`` at each active timestamp of ``v``."""
        sl = self._slice(self.graph.vertex(v))
        return [(int(t), int(r)) for t, r in zip(self.graph.pairs.time[sl], self.values[sl])]

    def endpoint_ranks(self) -> tuple[IntArray, IntArray]:
        """Ranks of the tail and the head of every edge at its timestamp."""
        p = self.graph.pairs
        return self.values[p.edge_source], self.values[p.edge_target]

    def is_constant(self) -> bool:
        p = self.graph.pairs
        return bool((self.values[p.consecutive] == self.values[p.consecutive + 1]).all())


@dataclass(eq=False)
class RankSegmentation:
    """One change point per vertex: rank ``r1[v]`` before ``tau[v]``, ``r2[v]`` from it on.

    ``tau[v] == NO_CHANGE`` marks a constant vertex, in which case
    ``r1[v] == r2[v]``.
    """

    r1: IntArray
    r2: IntArray
    tau: IntArray

    def __post_init__(self) -> None:
        self.r1 = np.asarray(self.r1, dtype=np.int64)
        self.r2 = np.asarray(self.r2, dtype=np.int64)
        self.tau = np.asarray(self.tau, dtype=np.int64)
        if not (self.r1.shape == self.r2.shape == self.tau.shape):
            raise ValueError("r1, r2 and tau must have the same length")
        still = self.tau == NO_CHANGE
        if (self.r1[still] != self.r2[still]).any():
            raise ValueError("a vertex without change point must have r1 == r2")

    @property
    def changed(self) -> npt.NDArray[np.bool_]:
        return self.tau != NO_CHANGE

    def rank(self, v: int, t: int) -> int:
        return int(self.r1[v] if t < self.tau[v] else self.r2[v])

    def assignment(self, graph: TemporalGraph) -> RankAssignment:
        p = graph.pairs
        before = p.time < self.tau[p.vertex]
        values = np.where(before, self.r1[p.vertex], self.r2[p.vertex])
        # edgeless vertices: either rank will do, they are never looked at by a score
        return RankAssignment(graph, values, base=self.r1.copy())
