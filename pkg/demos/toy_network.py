"""Two vertices that keep swapping who talks to whom.

u sends to v at time 0, v answers at time 1, u sends again at time 2.  A
single constant ranking must get one of the three edges wrong, a ranking
allowed to move pays for the moves instead, and a ranking allowed one
change per vertex can fit all three edges.
"""

from __future__ import annotations

from temporal_agony import TemporalGraph, solve_fluc, solve_seg, solve_static, stats

g = TemporalGraph.from_edges([("u", "v", 1, 0), ("v", "u", 1, 1), ("u", "v", 1, 2)])
print(g)

# %% Constant ranks, at most two levels
sol = solve_static(g, k=2)
print("static  :", {lab: sol.assignment.rank(lab, 0) for lab in g.labels}, "score", sol.score)

# %% Free movement: lambda = 0 fits every snapshot separately
for lam in (0, 1):
    sol = solve_fluc(g, lam)
    series = {lab: [r for _, r in sol.assignment.series(lab)] for lab in g.labels}
    print(f"fluc l={lam}:", series, "score", sol.score, "flux", sol.flux)

# %% One change point per vertex
state = solve_seg(g, k=4, init={"u": 1, "v": 2})
seg = state.segmentation
for v, lab in enumerate(g.labels):
    print(f"seg     : {lab} {seg.r1[v]} -> {seg.r2[v]} at t={seg.tau[v]}")
print(stats(g, seg).to_text(timing=False), end="")
