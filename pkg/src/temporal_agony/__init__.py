"""Agony-based ranking of temporal directed graphs."""

from __future__ import annotations

from .datasets import read_higgs_activity
from .gen_agony import INFINITE, GenGraph, GenRanking, InfeasibleError, check_feasible, evaluate, solve
from .graph import ParseError, TemporalEdge, TemporalGraph, format_edge_list, parse_edge_list, read_edge_list
from .metrics import RankingStats, edge_penalty, flux, score, stats, total_flux
from .ranking import NO_CHANGE, RankAssignment, RankSegmentation
from .seg import SegState, change2ranks, median_init, ranks2change, solve_seg
from .solvers import Solution, solve_fluc, solve_static

__version__ = "0.1.0"

__all__ = [
    "INFINITE",
    "NO_CHANGE",
    "GenGraph",
    "GenRanking",
    "InfeasibleError",
    "ParseError",
    "RankAssignment",
    "RankSegmentation",
    "RankingStats",
    "SegState",
    "Solution",
    "TemporalEdge",
    "TemporalGraph",
    "change2ranks",
    "check_feasible",
    "edge_penalty",
    "evaluate",
    "flux",
    "format_edge_list",
    "median_init",
    "parse_edge_list",
    "ranks2change",
    "read_edge_list",
    "read_higgs_activity",
    "score",
    "solve",
    "solve_fluc",
    "solve_seg",
    "solve_static",
    "stats",
    "total_flux",
]
