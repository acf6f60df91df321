"""Satisfying assignments of a 3-CNF formula as zero-agony change points.

The formula is encoded as a temporal graph on three timestamps.  Every
satisfying assignment yields change points under which the best ranks
before and after them break every cycle, so the score is zero.
"""

from __future__ import annotations

import itertools

from temporal_agony import change2ranks
from temporal_agony.oracle import gadget_from_3sat, parse_dimacs, tau_from_assignment

formula = parse_dimacs(
    """
    p cnf 3 3
    1 -2 3 0
    -1 2 3 0
    1 2 -3 0
    """
)
g = gadget_from_3sat(formula)
print(g)

for assignment in itertools.product([False, True], repeat=formula.n_vars):
    if formula.satisfied_by(assignment):
        _, s = change2ranks(g, tau_from_assignment(formula, assignment))
        print("".join("T" if a else "F" for a in assignment), "score", s)
