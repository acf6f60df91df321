"""How the fluctuation penalty trades ranking quality for stability.

A synthetic graph with a planted hierarchy that drifts over time is solved
for a range of penalties.  Small penalties let ranks follow every snapshot
(low agony, high flux); large ones freeze them (the static optimum, zero
flux).
"""

from __future__ import annotations

from temporal_agony import solve_fluc, solve_static, stats
from temporal_agony.oracle import synthetic_temporal_graph

g = synthetic_temporal_graph(seed=1, n_vertices=300, n_edges=3000, n_times=20, levels=5, noise=0.1)
static = solve_static(g)
print(g, "static optimum", static.objective)

print(f"{'lambda':>6} {'score':>7} {'avg_flux':>9} {'objective':>9}")
for lam in (0, 1, 2, 4, 8, 16, 1 + static.objective):
    sol = solve_fluc(g, lam)
    print(f"{lam:>6} {sol.score:>7} {stats(g, sol.assignment).avg_flux:>9.3f} {sol.objective:>9}")
