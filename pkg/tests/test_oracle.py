from __future__ import annotations

import itertools

import pytest

from temporal_agony.gen_agony import INFINITE, GenGraph
from temporal_agony.graph import TemporalGraph
from temporal_agony.oracle import (
    CnfFormula,
    SearchSpaceTooLarge,
    brute_change2ranks,
    brute_fluc,
    brute_gen,
    brute_ranks2change,
    brute_seg,
    brute_static,
    gadget_from_3sat,
    gen_rank_bound,
    parse_dimacs,
    random_gen_graph,
    random_satisfiable_formula,
    random_temporal_graph,
    synthetic_temporal_graph,
    tau_from_assignment,
)
from temporal_agony.seg import change2ranks
from temporal_agony.solvers import solve_fluc


def test_brute_solvers_on_toy(toy):
    assert brute_static(toy, 2) == 2
    assert brute_static(toy) == 2
    assert brute_fluc(toy, 0, 2) == 0
    assert brute_fluc(toy, 1) == 2
    assert brute_seg(toy, 4) == 0
    assert brute_change2ranks(toy, [1, 2], 4) == 0
    assert brute_change2ranks(toy, [1, 1], 4) == 2
    assert brute_ranks2change(toy, [0, 1], [2, 3]) == 0


def test_brute_gen_small_cases():
    assert brute_gen(GenGraph.from_arcs(2, [(0, 1, 1, 1), (1, 0, 1, 1)])) == 2
    assert brute_gen(GenGraph.from_arcs(2, [(0, 1, INFINITE, 1), (1, 0, INFINITE, 0)])) == INFINITE
    assert brute_gen(GenGraph.from_arcs(1, [(0, 0, 2, 3)])) == 6


def test_gen_rank_bound():
    g = GenGraph.from_arcs(3, [(0, 1, 1, 4), (1, 2, 1, -1), (2, 0, 1, 2)])
    assert gen_rank_bound(g) == 6
    assert gen_rank_bound(GenGraph.from_arcs(1, [])) == 0


def test_search_space_guard():
    big = TemporalGraph.from_edges([(f"a{i}", f"a{i + 1}", 1, 0) for i in range(12)])
    with pytest.raises(SearchSpaceTooLarge):
        brute_static(big, 5)


def test_generators_are_seeded():
    assert random_temporal_graph(5) == random_temporal_graph(5)
    assert random_gen_graph(5).arcs() == random_gen_graph(5).arcs()
    g = random_temporal_graph(11, max_vertices=3, max_times=3, max_edges=5)
    assert g.n <= 3 and len(g.times) <= 3 and g.m <= 5


def test_synthetic_graph_shape():
    g = synthetic_temporal_graph(0, 50, 400, 10)
    assert (g.n, g.m) == (50, 400)
    assert len(g.times) <= 10
    assert (g.sources != g.targets).all()


def test_gadget_size_for_one_variable_one_clause():
    f = CnfFormula(1, ((1, 1, 1),))
    g = gadget_from_3sat(f)
    assert g.n == 14
    assert g.m == 33
    assert g.times.tolist() == [0, 1, 2]


def test_certificate_rejects_unsatisfying_assignment():
    f = CnfFormula(2, ((1, 2, 2),))
    with pytest.raises(ValueError):
        tau_from_assignment(f, [False, False])


@pytest.mark.parametrize("seed", range(10))
def test_certificate_gives_zero_score(seed):
    f, truth = random_satisfiable_formula(seed)
    assert f.satisfied_by(truth)
    _, s = change2ranks(gadget_from_3sat(f), tau_from_assignment(f, truth))
    assert s == 0


@pytest.mark.parametrize("seed", range(10))
def test_falsifying_assignments_do_not_give_zero(seed):
    """Change points built the same way from an assignment that falsifies
    some clause leave a cycle behind."""
    f, _ = random_satisfiable_formula(seed)
    g = gadget_from_3sat(f)
    for assignment in itertools.product([False, True], repeat=f.n_vars):
        if f.satisfied_by(assignment):
            continue
        tau = {}
        for i, value in enumerate(assignment, start=1):
            tau[f"p{i}"], tau[f"n{i}"] = (1, 2) if value else (2, 1)
        for j, clause in enumerate(f.clauses, start=1):
            for l, lit in enumerate(clause, start=1):
                tau[f"c{j}_{l}"] = 2 if assignment[abs(lit) - 1] == (lit > 0) else 1
                tau[f"x{j}_{l}"], tau[f"y{j}_{l}"], tau[f"z{j}_{l}"] = 1, 2, 2
        assert change2ranks(g, tau)[1] > 0


def test_parse_dimacs():
    f = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 3 0\n")
    assert f.n_vars == 3
    assert f.clauses == ((1, -2, 3), (-1, 2, 3))
    with pytest.raises(ValueError):
        parse_dimacs("p cnf 2 1\n1 2 0\n")


def test_brute_fluc_agrees_with_active_pair_model():
    # a is idle at t=1; the full grid gives it a free cell there
    g = TemporalGraph.from_edges([("a", "b", 1, 0), ("b", "c", 1, 1), ("b", "a", 1, 2)])
    for lam in (0, 1, 2):
        assert brute_fluc(g, lam, 3) == solve_fluc(g, lam, 3).objective
