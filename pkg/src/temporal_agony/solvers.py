"""Exact solvers for constant and fluctuating rankings."""

from __future__ import annotations

from dataclasses import dataclass

from . import gen_agony
from .graph import TemporalGraph
from .metrics import score, total_flux
from .ranking import RankAssignment
from .reductions import extract_fluc, extract_static, fluc_to_gen, static_to_gen


@dataclass(frozen=True, eq=False)
class Solution:
    """An optimal assignment with its penalty score and total fluctuation.

    ``objective`` is what the solver minimized: ``score`` for a constant
    ranking, ``score + lam * flux`` for a fluctuating one.
    """

    assignment: RankAssignment
    objective: int
    score: int
    flux: int


def solve_static(graph: TemporalGraph, k: int | None = None) -> Solution:
    """Best constant ranking, ranks in ``[0, k-1]`` when ``k`` is given."""
    inst, nodes = static_to_gen(graph, k)
    ranking = gen_agony.solve(inst)
    assignment = extract_static(graph, ranking, nodes)
    s = score(graph, assignment)
    assert s == ranking.objective
    return Solution(assignment, s, s, 0)


def solve_fluc(graph: TemporalGraph, lam: int, k: int | None = None) -> Solution:
    """Best ranking that may change over time, each unit of change costing ``lam``."""
    inst, nodes = fluc_to_gen(graph, lam, k)
    ranking = gen_agony.solve(inst)
    assignment = extract_fluc(graph, ranking, nodes)
    s, f = score(graph, assignment), total_flux(graph, assignment)
    assert s + lam * f == ranking.objective
    return Solution(assignment, ranking.objective, s, f)
