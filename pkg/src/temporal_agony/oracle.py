"""Exhaustive reference solvers and test-instance generators.

Everything here is deliberately naive: the brute-force solvers enumerate
rank vectors directly from the problem definitions and share no code with
the flow-based pipeline beyond the graph container.  They refuse to run when
the search space exceeds ``MAX_SPACE`` points.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .gen_agony import INFINITE, GenGraph
from .graph import TemporalGraph

MAX_SPACE = 10**7

_BIG = np.int64(1) << 60


class SearchSpaceTooLarge(ValueError):
    pass


def _guard(size: int) -> None:
    if size > MAX_SPACE:
        raise SearchSpaceTooLarge(f"search space of {size} points exceeds {MAX_SPACE}")


def gen_rank_bound(graph: GenGraph) -> int:
    """A rank range that provably contains an optimum.

    Optimal ranks can be taken as distances along simple paths of the
    residual network, each step costing at most ``max |b|``, so a window of
    ``(n - 1) * max|b|`` (and at most the sum of the ``n - 1`` largest
    ``|b|``) suffices.
    """
    if graph.n_arcs == 0 or graph.n_nodes <= 1:
        return 0
    mags = np.sort(np.abs(graph.offsets))[::-1]
    return int(mags[: graph.n_nodes - 1].sum())


def brute_gen(graph: GenGraph, rank_bound: int | None = None) -> float:
    """Minimum of the generalized objective over ``[0, rank_bound]^n``.

    Returns ``INFINITE`` if every point violates a hard constraint.
    """
    if rank_bound is None:
        rank_bound = gen_rank_bound(graph)
    n = graph.n_nodes
    if n == 0:
        return 0
    side = rank_bound + 1
    _guard(side**n)

    # broadcast each arc's penalty table over the full grid
    total = np.zeros((side,) * n, dtype=np.int64)
    grid = np.arange(side, dtype=np.int64)
    for u, v, c, b in graph.arcs():
        if u == v:
            if math.isinf(c):
                total = total + (_BIG if b > 0 else 0)
            else:
                total = total + c * max(b, 0)
            continue
        diff = grid[:, None] - grid[None, :] + b  # axis 0: rank of u, axis 1: rank of v
        pen = np.where(diff > 0, _BIG, 0) if math.isinf(c) else c * np.maximum(diff, 0)
        if u > v:
            pen = pen.T
        shape = [1] * n
        shape[u] = shape[v] = side
        total = total + pen.reshape(shape)
    best = int(total.min())
    return INFINITE if best >= _BIG else best


def _edge_penalties(graph: TemporalGraph, ru: np.ndarray, rv: np.ndarray) -> np.ndarray:
    """Score of each candidate row; ``ru``/``rv`` are (candidates, m) endpoint ranks."""
    return (graph.weights * np.maximum(ru - rv + 1, 0)).sum(axis=1)


def _levels(k: int | None, default: int) -> int:
    return max(default, 1) if k is None else k


def _chunks(space: Iterable[tuple[int, ...]], width: int, size: int = 1 << 16):
    it = iter(space)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), width)


def brute_static(graph: TemporalGraph, k: int | None = None) -> int:
    """Best constant ranking with ranks in ``[0, k-1]`` (``k`` defaults to ``n``)."""
    n = graph.n
    k = _levels(k, n)
    _guard(k**n)
    if graph.m == 0:
        return 0
    best = None
    for rows in _chunks(itertools.product(range(k), repeat=n), n):
        s = _edge_penalties(graph, rows[:, graph.sources], rows[:, graph.targets]).min()
        best = s if best is None else min(best, s)
    return int(best)


def brute_fluc(graph: TemporalGraph, lam: int, k: int | None = None) -> int:
    """Best ``score + lam * sum flux`` over all rank grids ``V x T``.

    The fluctuation is summed over the full ordered timeline ``T``, exactly
    as in the definition, and every ``(v, t)`` cell is free.
    """
    n, times = graph.n, graph.times
    nt = len(times)
    if graph.m == 0:
        return 0
    cells = n * nt
    k = _levels(k, cells)
    _guard(k**cells)
    tidx = np.searchsorted(times, graph.timestamps)
    src_cell = graph.sources * nt + tidx
    dst_cell = graph.targets * nt + tidx
    best = None
    for rows in _chunks(itertools.product(range(k), repeat=cells), cells):
        grid = rows.reshape(len(rows), n, nt)
        flux = np.abs(np.diff(grid, axis=2)).sum(axis=(1, 2))
        s = _edge_penalties(graph, rows[:, src_cell], rows[:, dst_cell]) + lam * flux
        m = s.min()
        best = m if best is None else min(best, m)
    return int(best)


def _segment_ranks(graph: TemporalGraph, r1, r2, tau) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint ranks for candidate rows of (r1, r2, tau); tau = +inf for no change."""
    t = graph.timestamps
    ru = np.where(t < tau[:, graph.sources], r1[:, graph.sources], r2[:, graph.sources])
    rv = np.where(t < tau[:, graph.targets], r1[:, graph.targets], r2[:, graph.targets])
    return ru, rv


def _tau_choices(graph: TemporalGraph) -> list[float]:
    return [float(t) for t in graph.times] + [math.inf]


def brute_seg(graph: TemporalGraph, k: int | None = None) -> int:
    """Best rank segmentation: ``(r1, r2, tau)`` per vertex, ``tau`` in ``T`` or no change."""
    n = graph.n
    if graph.m == 0:
        return 0
    k = _levels(k, 2 * n)
    choices = [
        (a, b, tau)
        for a in range(k)
        for b in range(k)
        for tau in _tau_choices(graph)
        if not (math.isinf(tau) and a != b)
    ]
    _guard(len(choices) ** n)
    table = np.array(choices)
    best = None
    for rows in _chunks(itertools.product(range(len(choices)), repeat=n), n):
        picked = table[rows]  # (rows, n, 3)
        r1 = picked[..., 0].astype(np.int64)
        r2 = picked[..., 1].astype(np.int64)
        ru, rv = _segment_ranks(graph, r1, r2, picked[..., 2])
        s = _edge_penalties(graph, ru, rv).min()
        best = s if best is None else min(best, s)
    return int(best)


def brute_change2ranks(graph: TemporalGraph, tau: Sequence[int], k: int | None = None) -> int:
    """Best ``(r1, r2)`` per vertex for fixed change points."""
    n = graph.n
    if graph.m == 0:
        return 0
    k = _levels(k, 2 * n)
    _guard(k ** (2 * n))
    tau_row = np.asarray(tau, dtype=np.float64)[None, :]
    best = None
    for rows in _chunks(itertools.product(range(k), repeat=2 * n), 2 * n):
        r1, r2 = rows[:, :n], rows[:, n:]
        ru, rv = _segment_ranks(graph, r1, r2, np.broadcast_to(tau_row, r1.shape))
        s = _edge_penalties(graph, ru, rv).min()
        best = s if best is None else min(best, s)
    return int(best)


def brute_ranks2change(graph: TemporalGraph, r1: Sequence[int], r2: Sequence[int]) -> int:
    """Best change points for fixed rank pairs."""
    n = graph.n
    if graph.m == 0:
        return 0
    choices = np.array(_tau_choices(graph))
    _guard(len(choices) ** n)
    r1 = np.asarray(r1, dtype=np.int64)[None, :]
    r2 = np.asarray(r2, dtype=np.int64)[None, :]
    best = None
    for rows in _chunks(itertools.product(range(len(choices)), repeat=n), n):
        tau = choices[rows]
        ru, rv = _segment_ranks(graph, np.broadcast_to(r1, tau.shape), np.broadcast_to(r2, tau.shape), tau)
        s = _edge_penalties(graph, ru, rv).min()
        best = s if best is None else min(best, s)
    return int(best)


# --- random instances -----------------------------------------------------


def random_gen_graph(
    seed: int,
    max_nodes: int = 6,
    max_arcs: int = 10,
    offsets: tuple[int, int] = (-2, 2),
    capacities: Sequence[float] = (1, 2, 3, INFINITE),
) -> GenGraph:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_nodes + 1))
    m = int(rng.integers(0, max_arcs + 1))
    arcs = []
    for _ in range(m):
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        c = capacities[int(rng.integers(len(capacities)))]
        b = int(rng.integers(offsets[0], offsets[1] + 1))
        arcs.append((u, v, c, b))
    return GenGraph.from_arcs(n, arcs)


def random_temporal_graph(
    seed: int,
    max_vertices: int = 3,
    max_times: int = 3,
    max_edges: int = 5,
    max_weight: int = 3,
    self_loops: bool = True,
) -> TemporalGraph:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_vertices + 1))
    nt = int(rng.integers(1, max_times + 1))
    m = int(rng.integers(1, max_edges + 1))
    times = np.sort(rng.choice(np.arange(10), size=nt, replace=False))
    edges = []
    for _ in range(m):
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if not self_loops and n > 1:
            while u == v:
                v = int(rng.integers(0, n))
        edges.append((f"v{u}", f"v{v}", int(rng.integers(1, max_weight + 1)), int(rng.choice(times))))
    return TemporalGraph.from_edges(edges, vertices=[f"v{i}" for i in range(n)])


def synthetic_temporal_graph(
    seed: int, n_vertices: int, n_edges: int, n_times: int, levels: int = 8, noise: float = 0.2
) -> TemporalGraph:
    """Large graph with a planted, slowly drifting hierarchy.

    Each vertex starts on a random level and may move one level at a random
    time; edges mostly point from lower to higher levels, with a ``noise``
    fraction reversed.
    """
    rng = np.random.default_rng(seed)
    level0 = rng.integers(0, levels, size=n_vertices)
    shift = rng.choice([-1, 0, 1], size=n_vertices, p=[0.15, 0.7, 0.15])
    switch = rng.integers(0, n_times, size=n_vertices)
    u = rng.integers(0, n_vertices, size=n_edges)
    v = rng.integers(0, n_vertices, size=n_edges)
    v = np.where(u == v, (v + 1) % n_vertices, v)
    t = rng.integers(0, n_times, size=n_edges)
    lu = level0[u] + np.where(t >= switch[u], shift[u], 0)
    lv = level0[v] + np.where(t >= switch[v], shift[v], 0)
    forward = lu <= lv
    flip = rng.random(n_edges) < noise
    swap = forward == flip
    src = np.where(swap, v, u)
    dst = np.where(swap, u, v)
    w = rng.integers(1, 4, size=n_edges)
    return TemporalGraph([f"n{i}" for i in range(n_vertices)], src, dst, w, t)


# --- 3SAT gadget ------------------------------------------------------------


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF formula; literal ``+i`` / ``-i`` refers to variable ``i`` (1-based)."""

    n_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError(f"clause {clause} does not have exactly 3 literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise ValueError(f"literal {lit} out of range")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    n_vars = 0
    lits: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            n_vars = int(line.split()[2])
            continue
        lits.extend(int(x) for x in line.split())
    clauses = []
    cur: list[int] = []
    for lit in lits:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        clauses.append(tuple(cur))
    return CnfFormula(n_vars, tuple(clauses))  # type: ignore[arg-type]


def random_satisfiable_formula(seed: int, n_vars: int = 3, max_clauses: int = 4) -> tuple[CnfFormula, list[bool]]:
    """A random formula together with a satisfying assignment planted into it."""
    rng = np.random.default_rng(seed)
    truth = [bool(x) for x in rng.integers(0, 2, size=n_vars)]
    m = int(rng.integers(1, max_clauses + 1))
    clauses = []
    for _ in range(m):
        while True:
            vars_ = rng.integers(1, n_vars + 1, size=3)
            signs = rng.choice([-1, 1], size=3)
            clause = tuple(int(s * v) for s, v in zip(signs, vars_))
            if any(truth[abs(l) - 1] == (l > 0) for l in clause):
                break
        clauses.append(clause)
    return CnfFormula(n_vars, tuple(clauses)), truth


def _gadget_labels(formula: CnfFormula) -> dict[str, list[str]]:
    n, m = formula.n_vars, len(formula.clauses)
    occ = [(j, l) for j in range(1, m + 1) for l in (1, 2, 3)]
    return {
        "p": [f"p{i}" for i in range(1, n + 1)],
        "n": [f"n{i}" for i in range(1, n + 1)],
        "c": [f"c{j}_{l}" for j, l in occ],
        "x": [f"x{j}_{l}" for j, l in occ],
        "y": [f"y{j}_{l}" for j, l in occ],
        "z": [f"z{j}_{l}" for j, l in occ],
    }


def gadget_from_3sat(formula: CnfFormula) -> TemporalGraph:
    """Temporal graph on timestamps {0, 1, 2} whose zero-score rank
    segmentations correspond to satisfying assignments.

    Vertices: ``p_i, n_i`` per variable, ``c_jl`` per literal occurrence and
    ``x_jl, y_jl, z_jl`` per occurrence; all edges have weight 1.
    """
    labels = _gadget_labels(formula)
    edges: list[tuple[str, str, int, int]] = []

    def add(u: str, v: str, t: int) -> None:
        edges.append((u, v, 1, t))

    for i in range(1, formula.n_vars + 1):
        p, q = f"p{i}", f"n{i}"
        add(p, q, 0)
        add(q, p, 1)
        add(p, q, 2)
    for j, clause in enumerate(formula.clauses, start=1):
        for l, lit in enumerate(clause, start=1):
            c = f"c{j}_{l}"
            if lit > 0:
                add(f"p{lit}", c, 0)
                add(c, f"p{lit}", 1)
            else:
                add(c, f"n{-lit}", 0)
                add(f"n{-lit}", c, 1)
        for l in (1, 2, 3):
            # x_j1 -> c_j2, x_j2 -> c_j3, x_j3 -> c_j1 at t=1; c_jl -> x_jl at t=2
            add(f"x{j}_{l}", f"c{j}_{l % 3 + 1}", 1)
            add(f"c{j}_{l}", f"x{j}_{l}", 2)
        for l in (1, 2, 3):
            x, y, z = f"x{j}_{l}", f"y{j}_{l}", f"z{j}_{l}"
            add(y, x, 0)
            add(z, x, 0)
            add(z, y, 1)
            add(x, z, 1)
            add(y, x, 2)
            add(x, z, 2)
    order = [lab for group in labels.values() for lab in group]
    return TemporalGraph.from_edges(edges, vertices=order)


def tau_from_assignment(formula: CnfFormula, assignment: Sequence[bool]) -> dict[str, int]:
    """Change points under which the gadget's change2ranks graph is acyclic.

    Raises:
        ValueError: If ``assignment`` does not satisfy ``formula``.
    """
    if len(assignment) != formula.n_vars:
        raise ValueError("assignment length does not match the number of variables")
    if not formula.satisfied_by(assignment):
        raise ValueError("assignment does not satisfy the formula")
    tau: dict[str, int] = {}
    for i, value in enumerate(assignment, start=1):
        tau[f"p{i}"], tau[f"n{i}"] = (1, 2) if value else (2, 1)
    for j, clause in enumerate(formula.clauses, start=1):
        for l, lit in enumerate(clause, start=1):
            true = assignment[abs(lit) - 1] == (lit > 0)
            tau[f"c{j}_{l}"] = 2 if true else 1
            tau[f"x{j}_{l}"] = 1
            tau[f"y{j}_{l}"] = 2
            tau[f"z{j}_{l}"] = 2
    return tau
