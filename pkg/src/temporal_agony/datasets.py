"""Loaders for public interaction logs."""

from __future__ import annotations

import os

from .graph import ParseError, TemporalGraph

HIGGS_KINDS = ("RT", "MT", "RE")


def read_higgs_activity(
    path: str | os.PathLike[str], kind: str = "RE", bin_seconds: int = 3600
) -> TemporalGraph:
    """Read the SNAP Higgs Twitter activity log (``userA userB unixtime kind``).

    Keeps the rows of one interaction ``kind`` (``RT`` retweet, ``MT``
    mention, ``RE`` reply) as unit-weight edges ``userA -> userB`` with
    timestamps floor-divided by ``bin_seconds`` (hours by default).
    """
    if kind not in HIGGS_KINDS:
        raise ValueError(f"unknown interaction kind {kind!r}, expected one of {HIGGS_KINDS}")
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 4:
                raise ParseError(lineno, f"expected 4 fields, got {len(fields)}")
            if fields[3] != kind:
                continue
            try:
                t = int(fields[2])
            except ValueError:
                raise ParseError(lineno, f"timestamp {fields[2]!r} is not an integer") from None
            edges.append((fields[0], fields[1], 1, t // bin_seconds))
    return TemporalGraph.from_edges(edges)
