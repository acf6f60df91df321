from __future__ import annotations

import numpy as np
import pytest

from temporal_agony.graph import TemporalEdge, TemporalGraph
from temporal_agony.metrics import edge_penalty, flux, score, stats, total_flux
from temporal_agony.oracle import random_temporal_graph
from temporal_agony.ranking import NO_CHANGE, RankAssignment, RankSegmentation
from temporal_agony.seg import solve_seg
from temporal_agony.solvers import solve_fluc


@pytest.mark.parametrize(
    "weight, ru, rv, expected",
    [(1, 0, 1, 0), (1, 2, 2, 1), (3, 2, 0, 9)],
)
def test_edge_penalty(weight, ru, rv, expected):
    g = TemporalGraph.from_edges([("u", "v", weight, 0)])
    a = RankAssignment.constant(g, [ru, rv])
    assert edge_penalty(TemporalEdge(0, 1, weight, 0), a) == expected


def test_score_examples(toy):
    assert score(toy, RankAssignment.constant(toy, [0, 1])) == 2
    seg = RankSegmentation([0, 1], [2, 3], [1, 2])
    assert score(toy, seg) == 0
    empty = TemporalGraph.from_edges([], vertices=["a"])
    assert score(empty, RankAssignment.constant(empty, [4])) == 0


def test_flux_examples(toy):
    assert flux(toy, RankAssignment.constant(toy, [3, 1]), "u") == 0
    a = RankAssignment(toy, [0, 1, 0, 0, 0, 0])
    assert flux(toy, a, "u") == 2
    assert flux(toy, RankSegmentation([0, 0], [3, 0], [1, NO_CHANGE]), "u") == 3


def test_stats_on_worked_segmentation(toy):
    s = stats(toy, RankSegmentation([0, 1], [2, 3], [1, 2]))
    assert s.score == 0
    assert s.num_ranks == 4
    assert s.avg_change == 1.0
    assert s.avg_flux == s.avg_maxdiff == 2.0


def test_stats_constant_assignment(toy):
    s = stats(toy, RankAssignment.constant(toy, [0, 1]))
    assert (s.avg_flux, s.avg_maxdiff, s.avg_change) == (0, 0, 0)
    assert s.num_ranks == 2


def test_stats_averages_over_all_vertices():
    g = TemporalGraph.from_edges([("a", "b", 1, 0), ("a", "b", 1, 1)], vertices=["z"])
    a = RankAssignment(g, [0, 2, 1, 3])
    s = stats(g, a)
    assert s.avg_flux == pytest.approx(4 / 3)
    assert s.avg_change == pytest.approx(2 / 3)


def test_stats_text_record(toy):
    s = stats(toy, RankAssignment.constant(toy, [0, 1]), iterations=None, runtime_ms=1.5)
    text = s.to_text()
    assert text.splitlines() == [
        "score\t2", "num_ranks\t2", "avg_flux\t0", "avg_maxdiff\t0", "avg_change\t0", "iterations\t-", "runtime_ms\t1.5",
    ]
    assert "runtime_ms" not in s.to_text(timing=False)


def test_rank_lookup_between_active_timestamps():
    g = TemporalGraph.from_edges([("a", "b", 1, 2), ("a", "c", 1, 6)])
    a = RankAssignment(g, [1, 5, 0, 0])
    assert [a.rank("a", t) for t in (0, 2, 4, 6, 9)] == [1, 1, 1, 5, 5]


@pytest.mark.parametrize("seed", range(30))
def test_segmentations_have_flux_equal_to_maxdiff(seed):
    g = random_temporal_graph(seed, max_vertices=5, max_times=4, max_edges=12)
    s = stats(g, solve_seg(g).segmentation)
    assert s.avg_flux == pytest.approx(s.avg_maxdiff)
    assert s.avg_change <= 1


@pytest.mark.parametrize("seed", range(20))
def test_lambda_sweep_is_monotone(seed):
    g = random_temporal_graph(seed, max_vertices=6, max_times=5, max_edges=20)
    scores, fluxes, objectives = [], [], []
    for lam in range(5):
        sol = solve_fluc(g, lam)
        scores.append(sol.score)
        fluxes.append(total_flux(g, sol.assignment))
        objectives.append(sol.objective)
    assert scores == sorted(scores)
    assert fluxes == sorted(fluxes, reverse=True)
    assert objectives == sorted(objectives)


def test_scores_are_non_negative():
    rng = np.random.default_rng(0)
    for seed in range(20):
        g = random_temporal_graph(seed)
        a = RankAssignment(g, rng.integers(-3, 4, len(g.pairs)))
        assert score(g, a) >= 0
