from __future__ import annotations

import pytest

from temporal_agony.graph import TemporalGraph

TOY_EDGES = [("u", "v", 1, 0), ("v", "u", 1, 1), ("u", "v", 1, 2)]
TOY_TSV = "".join(f"{u}\t{v}\t{w}\t{t}\n" for u, v, w, t in TOY_EDGES)


@pytest.fixture
def toy() -> TemporalGraph:
    """Two vertices exchanging edges: u->v at 0, v->u at 1, u->v at 2."""
    return TemporalGraph.from_edges(TOY_EDGES)


@pytest.fixture
def toy_file(tmp_path):
    path = tmp_path / "toy.tsv"
    path.write_text(TOY_TSV)
    return path
