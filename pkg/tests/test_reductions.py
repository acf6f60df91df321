from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from temporal_agony import gen_agony
from temporal_agony.gen_agony import INFINITE, GenRanking, evaluate
from temporal_agony.graph import TemporalEdge, TemporalGraph
from temporal_agony.metrics import score, total_flux
from temporal_agony.oracle import random_temporal_graph
from temporal_agony.ranking import NO_CHANGE
from temporal_agony.reductions import (
    extract_fluc,
    extract_segmentation,
    extract_static,
    extract_two_level,
    fluc_to_gen,
    penalty_quad,
    penalty_quads,
    ranks_to_gen,
    static_to_gen,
    tau_to_gen,
)

# toy change-point inputs: u moves 0 -> 2, v moves 1 -> 3
R1, R2 = [0, 1], [2, 3]


def test_static_instance_merges_parallel_edges(toy):
    inst, nodes = static_to_gen(toy)
    finite = [a for a in inst.arcs() if a[2] != INFINITE]
    assert sorted(finite) == [(0, 1, 2, 1), (1, 0, 1, 1)]
    assert inst.n_nodes == 4 and nodes.bottom == 2 and nodes.top == 3


def test_static_level_gadget(toy):
    inst, nodes = static_to_gen(toy, k=2)
    hard = [a for a in inst.arcs() if a[2] == INFINITE]
    assert (nodes.top, nodes.bottom, INFINITE, -1) in hard
    r = gen_agony.solve(inst)
    a = extract_static(toy, r, nodes)
    assert r.objective == 2
    assert a.values.tolist() == [0, 0, 0, 1, 1, 1]


def test_static_with_one_level_is_flat(toy):
    inst, nodes = static_to_gen(toy, k=1)
    r = gen_agony.solve(inst)
    assert r.objective == 3
    assert extract_static(toy, r, nodes).values.tolist() == [0] * 6


def test_fluc_instance_layout(toy):
    inst, nodes = fluc_to_gen(toy, lam=2)
    arcs = inst.arcs()
    assert arcs[:3] == [(0, 3, 1, 1), (4, 1, 1, 1), (2, 5, 1, 1)]
    assert arcs[3:] == [(0, 1, 2, 0), (1, 0, 2, 0), (1, 2, 2, 0), (2, 1, 2, 0),
                        (3, 4, 2, 0), (4, 3, 2, 0), (4, 5, 2, 0), (5, 4, 2, 0)]
    assert nodes.pair.tolist() == list(range(6))


def test_fluc_extremes_on_toy(toy):
    for lam, objective, flux in [(0, 0, None), (1, 2, 0), (5, 2, 0)]:
        inst, nodes = fluc_to_gen(toy, lam)
        r = gen_agony.solve(inst)
        a = extract_fluc(toy, r, nodes)
        assert r.objective == objective
        assert score(toy, a) + lam * total_flux(toy, a) == objective
        if flux is not None:
            assert total_flux(toy, a) == flux


def test_fluc_rejects_negative_lambda(toy):
    with pytest.raises(ValueError):
        fluc_to_gen(toy, -1)


def test_bad_level_cap(toy):
    with pytest.raises(ValueError):
        static_to_gen(toy, k=0)


def test_tau_instance_is_acyclic_for_good_change_points(toy):
    inst, nodes = tau_to_gen(toy, {"u": 1, "v": 2}, k=4)
    finite = [a[:2] for a in inst.arcs() if a[2] != INFINITE]
    # u1 -> v1, v1 -> u2, u2 -> v2
    assert finite == [(0, 1), (1, 2), (2, 3)]
    r = gen_agony.solve(inst)
    seg = extract_two_level(toy, r, nodes, {"u": 1, "v": 2})
    assert r.objective == 0
    assert seg.r1.tolist() == [0, 1] and seg.r2.tolist() == [2, 3]
    assert seg.tau.tolist() == [1, 2]


def test_tau_instance_mapping_must_be_total(toy):
    with pytest.raises(ValueError):
        tau_to_gen(toy, {"u": 1})


def test_two_level_equalizes_unused_copy(toy):
    # tau past the end: only the first copy carries edges
    inst, nodes = tau_to_gen(toy, [9, 9])
    seg = extract_two_level(toy, gen_agony.solve(inst), nodes, [9, 9])
    assert (seg.r1 == seg.r2).all()
    assert (seg.tau == NO_CHANGE).all()


def test_ranks_instance_matches_worked_example(toy):
    inst, nodes = ranks_to_gen(toy, R1, R2)
    p = toy.pairs
    pair = {(toy.labels[v], int(t)): i for i, (v, t) in enumerate(zip(p.vertex, p.time))}
    bottom, top = nodes.bottom, nodes.top
    weight = {(u, v): c for u, v, c, _ in inst.arcs() if c != INFINITE}
    assert weight[pair["u", 0], pair["v", 0]] == 2
    assert weight[pair["v", 1], pair["u", 1]] == 0
    assert weight[pair["u", 2], pair["v", 2]] == 2
    assert weight[pair["v", 1], bottom] == 2
    assert weight[top, pair["u", 1]] == 2
    # the remaining penalty arcs carry nothing
    assert sum(weight.values()) == 8

    r = gen_agony.solve(inst)
    label = r.rank - r.rank[bottom]
    zero = {bottom, pair["u", 0], pair["v", 0], pair["v", 1]}
    assert all(label[i] == (0 if i in zero else 1) for i in range(inst.n_nodes))
    assert r.objective == 0

    seg = extract_segmentation(toy, r, nodes, R1, R2)
    assert seg.tau.tolist() == [1, 2]
    assert score(toy, seg) == 0


def test_ranks_instance_optimum_is_unique_on_toy(toy):
    inst, nodes = ranks_to_gen(toy, R1, R2)
    best = []
    for bits in range(2**6):
        lab = np.array([(bits >> i) & 1 for i in range(6)] + [0, 1])
        value = evaluate(inst, lab)
        if value != INFINITE:
            best.append((value, bits))
    best.sort()
    assert best[0][0] == 0 and best[1][0] > 0


def test_extract_segmentation_rejects_bad_labels(toy):
    _, nodes = ranks_to_gen(toy, R1, R2)
    rank = np.array([0, 1, 1, 0, 0, 1, 0, 1])
    rank[0] = 2
    with pytest.raises(ValueError):
        extract_segmentation(toy, GenRanking(rank, 0), nodes, R1, R2)
    rank = np.array([1, 0, 1, 0, 0, 1, 0, 1])
    with pytest.raises(ValueError):
        extract_segmentation(toy, GenRanking(rank, 0), nodes, R1, R2)


def test_penalty_quad_examples():
    e = TemporalEdge(0, 1, 2, 0)
    assert penalty_quad(e, [0, 1], [2, 3]) == (0, 0, 4, 0)
    e = TemporalEdge(1, 0, 1, 1)
    assert penalty_quad(e, [0, 1], [2, 3]) == (2, 0, 4, 2)


quad_inputs = st.tuples(
    st.integers(1, 5),
    st.lists(st.integers(-6, 6), min_size=2, max_size=2),
    st.lists(st.integers(-6, 6), min_size=2, max_size=2),
)


@given(quad_inputs)
def test_penalty_quad_inequality(args):
    w, r1, r2 = args
    q = penalty_quad(TemporalEdge(0, 1, w, 0), r1, r2)
    assert min(q) >= 0
    assert q.p01 <= min(q.p00, q.p11)
    assert q.p00 + q.p11 <= q.p01 + q.p10


@pytest.mark.parametrize("seed", range(60))
def test_ranks_instance_capacities_are_non_negative(seed):
    g = random_temporal_graph(seed, max_vertices=5, max_edges=12)
    rng = np.random.default_rng(seed)
    r1, r2 = rng.integers(0, 6, g.n), rng.integers(0, 6, g.n)
    inst, _ = ranks_to_gen(g, r1, r2)
    assert (inst.caps[~inst.infinite] >= 0).all()


@pytest.mark.parametrize("seed", range(50))
def test_labeling_score_identity(seed):
    """Score of the segmentation read off any feasible labeling equals the
    labeling's objective plus the sum of the low-low penalties."""
    g = random_temporal_graph(seed, max_vertices=4, max_edges=8)
    rng = np.random.default_rng(1000 + seed)
    r1, r2 = rng.integers(0, 5, g.n), rng.integers(0, 5, g.n)
    inst, nodes = ranks_to_gen(g, r1, r2)
    p = g.pairs
    # random monotone 0/1 labels: each vertex switches at a random position
    label = np.zeros(len(p), dtype=np.int64)
    for v in range(g.n):
        lo, hi = int(p.offsets[v]), int(p.offsets[v + 1])
        cut = int(rng.integers(lo, hi + 1))
        rising = r2[v] >= r1[v]
        label[lo:hi] = (np.arange(lo, hi) >= cut) if rising else (np.arange(lo, hi) < cut)
    rank = np.concatenate([label, [0, 1]])
    objective = evaluate(inst, rank)
    assert objective != INFINITE
    seg = extract_segmentation(g, GenRanking(rank, int(objective)), nodes, r1, r2)
    assert score(g, seg) == objective + penalty_quads(g, r1, r2).p01.sum()


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_fluc_objective_splits_into_score_and_flux(seed):
    g = random_temporal_graph(seed, max_vertices=5, max_times=4, max_edges=12)
    lam = seed % 3
    inst, nodes = fluc_to_gen(g, lam)
    r = gen_agony.solve(inst)
    a = extract_fluc(g, r, nodes)
    assert score(g, a) + lam * total_flux(g, a) == r.objective


def test_empty_graph_reductions():
    g = TemporalGraph.from_edges([], vertices=["a"])
    for inst, _ in (static_to_gen(g, 2), fluc_to_gen(g, 1, 2), tau_to_gen(g, [0], 2), ranks_to_gen(g, [0], [0])):
        assert gen_agony.solve(inst).objective == 0
