"""Weighted temporal directed graphs.

A temporal graph is a vertex table plus a multiset of edges ``(u, v, w, t)``.
Vertices are interned: labels map to dense integer ids in first-appearance
order.  Everything downstream works on the integer ids and on the *active
pairs* of the graph, i.e. the ``(vertex, timestamp)`` combinations where the
vertex touches at least one edge.
"""

from __future__ import annotations

import io
import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, TextIO

import numpy as np
import numpy.typing as npt

IntArray = npt.NDArray[np.int64]

COLUMN_MODES = ("uvwt", "uvt")


class ParseError(ValueError):
    """Raised for a malformed edge-list line."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class TemporalEdge(NamedTuple):
    source: int
    target: int
    weight: int
    timestamp: int


@dataclass(frozen=True, eq=False)
class ActivePairs:
    """Active ``(vertex, timestamp)`` pairs, sorted by vertex then time.

    ``offsets`` is a CSR-style index: the pairs of vertex ``v`` occupy
    ``offsets[v]:offsets[v + 1]``.  ``edge_source`` and ``edge_target`` give,
    for every edge, the pair index of its tail and head.
    """

    vertex: IntArray
    time: IntArray
    offsets: IntArray
    edge_source: IntArray
    edge_target: IntArray

    def __len__(self) -> int:
        return len(self.vertex)

    @cached_property
    def consecutive(self) -> IntArray:
        """Indices ``i`` such that pairs ``i`` and ``i + 1`` belong to the same vertex."""
        same = self.vertex[1:] == self.vertex[:-1]
        return np.flatnonzero(same).astype(np.int64)


class TemporalGraph:
    """Immutable weighted temporal directed graph.

    Args:
        labels: Vertex labels; position is the vertex id.
        sources, targets, weights, timestamps: Parallel edge columns, with
            endpoints given as vertex ids.
    """

    def __init__(
        self,
        labels: Sequence[str],
        sources: Sequence[int] | IntArray = (),
        targets: Sequence[int] | IntArray = (),
        weights: Sequence[int] | IntArray = (),
        timestamps: Sequence[int] | IntArray = (),
    ):
        self.labels: tuple[str, ...] = tuple(str(x) for x in labels)
        self.index: dict[str, int] = {label: i for i, label in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("duplicate vertex labels")

        cols = [np.asarray(c, dtype=np.int64).reshape(-1) for c in (sources, targets, weights, timestamps)]
        if len({len(c) for c in cols}) != 1:
            raise ValueError("edge columns have different lengths")
        self.sources, self.targets, self.weights, self.timestamps = cols
        for col in cols:
            col.setflags(write=False)

        n = len(self.labels)
        if len(self.sources) and (
            min(self.sources.min(), self.targets.min()) < 0
            or max(self.sources.max(), self.targets.max()) >= n
        ):
            raise ValueError("edge endpoint outside the vertex table")
        if (self.weights < 0).any():
            raise ValueError("edge weights must be non-negative")

        # T, the sorted set of distinct timestamps
        self.times: IntArray = np.unique(self.timestamps)
        self.times.setflags(write=False)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str, int, int]],
        vertices: Iterable[str] = (),
    ) -> TemporalGraph:
        """Build a graph from labelled ``(u, v, w, t)`` tuples.

        ``vertices`` are interned first, which allows edgeless vertices and
        pins the id order; remaining labels are interned as they appear.
        """
        index: dict[str, int] = {}
        for label in vertices:
            index.setdefault(str(label), len(index))
        cols: list[list[int]] = [[], [], [], []]
        for u, v, w, t in edges:
            cols[0].append(index.setdefault(str(u), len(index)))
            cols[1].append(index.setdefault(str(v), len(index)))
            cols[2].append(int(w))
            cols[3].append(int(t))
        return cls(list(index), *cols)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.sources)

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"TemporalGraph(n={self.n}, m={self.m}, |T|={len(self.times)})"

    def __eq__(self, other: object) -> bool:
        # edge order is irrelevant
        if not isinstance(other, TemporalGraph):
            return NotImplemented
        return self.labels == other.labels and sorted(self.edges) == sorted(other.edges)

    __hash__ = None  # type: ignore[assignment]

    @property
    def edges(self) -> list[TemporalEdge]:
        return [
            TemporalEdge(*map(int, row))
            for row in zip(self.sources, self.targets, self.weights, self.timestamps)
        ]

    def vertex(self, v: int | str) -> int:
        """Resolve a vertex label or id to its id."""
        if isinstance(v, str):
            try:
                return self.index[v]
            except KeyError:
                raise KeyError(f"unknown vertex {v!r}") from None
        v = int(v)
        if not 0 <= v < self.n:
            raise KeyError(f"unknown vertex id {v}")
        return v

    @cached_property
    def pairs(self) -> ActivePairs:
        n, m = self.n, self.m
        nt = max(len(self.times), 1)
        tidx_edge = np.searchsorted(self.times, self.timestamps)
        keys = np.concatenate([self.sources * nt + tidx_edge, self.targets * nt + tidx_edge])
        uniq, inverse = np.unique(keys, return_inverse=True)
        inverse = inverse.reshape(-1).astype(np.int64)
        vertex = (uniq // nt).astype(np.int64)
        time = self.times[uniq % nt] if len(uniq) else np.zeros(0, dtype=np.int64)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(vertex, minlength=n), out=offsets[1:])
        result = ActivePairs(
            vertex=vertex,
            time=np.asarray(time, dtype=np.int64),
            offsets=offsets,
            edge_source=inverse[:m],
            edge_target=inverse[m:],
        )
        for arr in (result.vertex, result.time, result.offsets, result.edge_source, result.edge_target):
            arr.setflags(write=False)
        return result

    def active_pairs(self) -> set[tuple[int, int]]:
        """All ``(vertex id, timestamp)`` pairs touched by some edge."""
        p = self.pairs
        return {(int(v), int(t)) for v, t in zip(p.vertex, p.time)}

    def active_timestamps(self, v: int | str) -> IntArray:
        """Sorted distinct timestamps at which ``v`` touches an edge."""
        v = self.vertex(v)
        p = self.pairs
        return p.time[p.offsets[v]:p.offsets[v + 1]]

    def incident_timestamps(self, v: int | str) -> list[int]:
        """Sorted timestamps of all edges incident to ``v``, one entry per edge.

        A self-loop counts once.
        """
        v = self.vertex(v)
        mask = (self.sources == v) | (self.targets == v)
        return sorted(int(t) for t in self.timestamps[mask])

    def snapshot(self, t: int) -> TemporalGraph:
        """The edges stamped ``t``, over the same vertex table."""
        t = int(t)
        i = np.searchsorted(self.times, t)
        if i >= len(self.times) or self.times[i] != t:
            raise KeyError(f"unknown timestamp {t}")
        mask = self.timestamps == t
        return TemporalGraph(
            self.labels,
            self.sources[mask],
            self.targets[mask],
            self.weights[mask],
            self.timestamps[mask],
        )

    def subgraph_edges(self, mask: npt.NDArray[np.bool_]) -> TemporalGraph:
        return TemporalGraph(
            self.labels, self.sources[mask], self.targets[mask], self.weights[mask], self.timestamps[mask]
        )


def parse_edge_list(
    stream: TextIO | str | Iterable[str],
    columns: str = "uvwt",
    bin_divisor: int | None = None,
) -> TemporalGraph:
    """Parse a whitespace-separated edge list.

    Args:
        stream: Text, a file object or any iterable of lines.
        columns: ``"uvwt"`` (source, target, weight, timestamp) or ``"uvt"``
            where every edge gets weight 1.
        bin_divisor: If given, timestamps are floor-divided by it.

    Raises:
        ParseError: On a line with the wrong number of fields, a non-integer
            weight or timestamp, or a negative weight.
    """
    if columns not in COLUMN_MODES:
        raise ValueError(f"unknown column mode {columns!r}, expected one of {COLUMN_MODES}")
    if bin_divisor is not None and bin_divisor <= 0:
        raise ValueError("bin divisor must be positive")
    if isinstance(stream, str):
        stream = io.StringIO(stream)

    arity = len(columns)
    edges = []
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != arity:
            raise ParseError(lineno, f"expected {arity} fields, got {len(fields)}")
        if arity == 4:
            u, v, w_text, t_text = fields
        else:
            u, v, t_text = fields
            w_text = "1"
        try:
            w = int(w_text)
        except ValueError:
            raise ParseError(lineno, f"weight {w_text!r} is not an integer") from None
        try:
            t = int(t_text)
        except ValueError:
            raise ParseError(lineno, f"timestamp {t_text!r} is not an integer") from None
        if w < 0:
            raise ParseError(lineno, f"negative weight {w}")
        if bin_divisor is not None:
            t //= bin_divisor
        edges.append((u, v, w, t))
    return TemporalGraph.from_edges(edges)


def read_edge_list(
    path: str | os.PathLike[str], columns: str = "uvwt", bin_divisor: int | None = None
) -> TemporalGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, columns, bin_divisor)


def format_edge_list(graph: TemporalGraph) -> str:
    """Serialize in ``uvwt`` mode; inverse of :func:`parse_edge_list` for graphs without edgeless vertices."""
    lab = graph.labels
    return "".join(f"{lab[e.source]}\t{lab[e.target]}\t{e.weight}\t{e.timestamp}\n" for e in graph.edges)
