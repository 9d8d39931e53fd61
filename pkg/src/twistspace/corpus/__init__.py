"""Bundled example graphs in the JSON graph format."""

from __future__ import annotations

import json
from importlib import resources

from ..graph import GraphInvolution, HalfEdgeGraph, graph_from_dict

NAMES = ("theta", "dumbbell", "k4", "doubled4", "fig2a", "fig2b", "petersen", "tripod", "free")


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.json")


def load(name: str) -> tuple[HalfEdgeGraph, GraphInvolution]:
    if name not in NAMES:
        raise KeyError(f"no corpus graph named {name!r}; have {', '.join(NAMES)}")
    return graph_from_dict(json.loads(path(name).read_text(encoding="utf-8")))


def load_all() -> dict[str, tuple[HalfEdgeGraph, GraphInvolution]]:
    return {name: load(name) for name in NAMES}
