"""Non-singular plane tropical curves and their compactified graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..errors import NotNonSingular
from ..graph import GraphInvolution, HalfEdgeGraph, graph_to_dict
from .poly import TropicalPoly, parse_poly
from .subdivision import DualSubdivision, Point, dual_subdivision, plane_slopes

Vec = tuple[int, int]


def primitive(v) -> Vec:
    x, y = Fraction(v[0]), Fraction(v[1])
    den = math.lcm(x.denominator, y.denominator)
    xi, yi = int(x * den), int(y * den)
    g = math.gcd(xi, yi)
    return xi // g, yi // g


@dataclass(frozen=True)
class CurveEdge:
    """A bounded edge (``ends = (v, v')``) or a ray (``ends = (v,)``).

    ``direction`` is primitive and points away from ``ends[0]``; ``dual`` is
    the subdivision edge it is dual to.
    """

    id: str
    ends: tuple[int, ...]
    direction: Vec
    dual: tuple[Point, Point]

    @property
    def bounded(self) -> bool:
        return len(self.ends) == 2

    @property
    def parity(self) -> Vec:
        return self.direction[0] & 1, self.direction[1] & 1


@dataclass(frozen=True, eq=False)
class TropicalCurve:
    poly: TropicalPoly
    subdivision: DualSubdivision
    triangles: tuple[tuple[Point, Point, Point], ...]
    vertices: tuple[tuple[Fraction, Fraction], ...]
    edges: tuple[CurveEdge, ...]
    rays: tuple[CurveEdge, ...]
    graph: HalfEdgeGraph

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(f"v{i + 1}" for i in range(len(self.vertices)))

    @cached_property
    def edge_by_id(self) -> dict[str, CurveEdge]:
        return {e.id: e for e in self.edges + self.rays}

    @property
    def bounded_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    @property
    def degree(self) -> int:
        return self.poly.degree

    @cached_property
    def tau(self) -> GraphInvolution:
        return GraphInvolution.identity(self.graph)

    def outgoing(self, v: int) -> list[tuple[CurveEdge, Vec, int]]:
        """Edges at curve vertex ``v`` as ``(edge, outgoing direction, half index)``."""
        out = []
        for h in self.graph.rotation[v]:
            idx = self.graph.half_edge[h]
            e = self.edge_by_id[self.graph.edge_ids[idx]]
            sign = 1 if self.graph.edge_halves[idx][0] == h else -1
            out.append((e, (sign * e.direction[0], sign * e.direction[1]), h))
        return out

    def to_dict(self) -> dict:
        def q(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "poly": str(self.poly),
            "vertices": [
                {"id": vid, "x": q(x), "y": q(y), "cell": [list(p) for p in tri]}
                for vid, (x, y), tri in zip(self.vertex_ids, self.vertices, self.triangles)
            ],
            "edges": [
                {
                    "id": e.id,
                    "kind": "bounded" if e.bounded else "ray",
                    "ends": [self.vertex_ids[v] for v in e.ends],
                    "direction": list(e.direction),
                    "dual": [list(p) for p in e.dual],
                }
                for e in self.edges + self.rays
            ],
            "cells": [[list(p) for p in c] for c in self.subdivision.cells],
            "graph": graph_to_dict(self.graph),
        }


def _angle(d: Vec) -> float:
    return math.atan2(d[1], d[0])


def build_curve(p: TropicalPoly | str) -> TropicalCurve:
    if isinstance(p, str):
        p = parse_poly(p)
    sub = dual_subdivision(p)
    if not sub.is_nonsingular:
        bad = next(c for c, pts in zip(sub.cells, sub.cell_points) if len(pts) != 3 or len(c) != 3)
        raise NotNonSingular(f"subdivision has a non-unimodular cell {list(bad)}", bad)
    triangles = sub.cells
    vertices = tuple(plane_slopes(p, tri) for tri in triangles)

    edges: list[CurveEdge] = []
    rays: list[CurveEdge] = []
    for seg, cells in sorted(sub.edges().items(), key=lambda kv: sorted(kv[0])):
        a, b = sorted(seg)
        rot = (a[1] - b[1], b[0] - a[0])
        if len(cells) == 2:
            v, w = cells
            dx, dy = vertices[w][0] - vertices[v][0], vertices[w][1] - vertices[v][1]
            d = primitive((dx, dy))
            if d not in (rot, (-rot[0], -rot[1])):
                raise NotNonSingular(f"edge dual to {[a, b]} is not orthogonal to it")
            edges.append(CurveEdge(f"e{len(edges) + 1}", (v, w), d, (a, b)))
        else:
            (v,) = cells
            third = next(q for q in triangles[v] if q not in seg)
            # Outward normal of the boundary segment, away from the third corner.
            if rot[0] * (third[0] - a[0]) + rot[1] * (third[1] - a[1]) > 0:
                rot = (-rot[0], -rot[1])
            rays.append(CurveEdge(f"r{len(rays) + 1}", (v,), rot, (a, b)))

    vertex_ids = [f"v{i + 1}" for i in range(len(vertices))] + [f"inf{i + 1}" for i in range(len(rays))]
    endpoints = [(vertex_ids[e.ends[0]], vertex_ids[e.ends[1]]) for e in edges]
    endpoints += [(vertex_ids[r.ends[0]], f"inf{i + 1}") for i, r in enumerate(rays)]
    edge_ids = [e.id for e in edges] + [r.id for r in rays]

    at: list[list[tuple[float, str]]] = [[] for _ in vertices]
    for e in edges:
        v, w = e.ends
        at[v].append((_angle(e.direction), f"{e.id}.0"))
        at[w].append((_angle((-e.direction[0], -e.direction[1])), f"{e.id}.1"))
    for r in rays:
        at[r.ends[0]].append((_angle(r.direction), f"{r.id}.0"))
    rotation = {vertex_ids[v]: [h for _, h in sorted(items)] for v, items in enumerate(at)}
    for i, r in enumerate(rays):
        rotation[f"inf{i + 1}"] = [f"{r.id}.1"]
    graph = HalfEdgeGraph.from_edges(endpoints, edge_ids, vertex_ids, rotation)
    return TropicalCurve(p, sub, triangles, vertices, tuple(edges), tuple(rays), graph)
