"""Half-edge model of real trivalent graphs.

Loops and multi-edges are first class: an edge is a pair of half-edges and a
loop is simply an edge whose two half-edges sit at the same vertex.  The real
structure is a permutation of half-edges.  Instances are tiny (tens of
edges), so connectivity questions are answered by removal plus union-find
rather than by anything clever.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    Disconnected,
    EdgeReversal,
    NonTrivalent,
    NotInvolution,
    ValidationError,
)


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def count_components(n_vertices: int, edges: Iterable[tuple[int, int]]) -> int:
    uf = _UnionFind(n_vertices)
    comps = n_vertices
    for a, b in edges:
        if uf.union(a, b):
            comps -= 1
    return comps


@dataclass(frozen=True, eq=False)
class HalfEdgeGraph:
    """Multigraph with explicit half-edges and an optional rotation system.

    Vertices, half-edges and edges are referred to by position; the ``*_ids``
    tuples hold their external string labels.  ``rotation[v]`` is the cyclic
    order of half-edges around ``v``; when none is given the input order of
    the half-edges at ``v`` is used.
    """

    vertex_ids: tuple[str, ...]
    half_ids: tuple[str, ...]
    half_vertex: tuple[int, ...]
    edge_ids: tuple[str, ...]
    edge_halves: tuple[tuple[int, int], ...]
    rotation_given: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if len(set(self.vertex_ids)) != len(self.vertex_ids):
            raise ValidationError("duplicate vertex id")
        if len(set(self.half_ids)) != len(self.half_ids):
            raise ValidationError("duplicate half-edge id")
        if len(set(self.edge_ids)) != len(self.edge_ids):
            raise ValidationError("duplicate edge id")
        if len(self.half_vertex) != len(self.half_ids):
            raise ValidationError("half_vertex length differs from half_ids")
        for h, v in enumerate(self.half_vertex):
            if not 0 <= v < len(self.vertex_ids):
                raise ValidationError(f"half-edge {self.half_ids[h]} has unknown vertex", self.half_ids[h])
        owner = [-1] * len(self.half_ids)
        for e, (a, b) in enumerate(self.edge_halves):
            for h in (a, b):
                if not 0 <= h < len(self.half_ids):
                    raise ValidationError(f"edge {self.edge_ids[e]} uses unknown half-edge", self.edge_ids[e])
                if owner[h] != -1:
                    raise ValidationError(f"half-edge {self.half_ids[h]} belongs to two edges", self.half_ids[h])
                owner[h] = e
            if a == b:
                raise ValidationError(f"edge {self.edge_ids[e]} repeats a half-edge", self.edge_ids[e])
        for h, e in enumerate(owner):
            if e == -1:
                raise ValidationError(f"half-edge {self.half_ids[h]} belongs to no edge", self.half_ids[h])
        if self.rotation_given is not None:
            if len(self.rotation_given) != len(self.vertex_ids):
                raise ValidationError("rotation must list every vertex")
            for v, cyc in enumerate(self.rotation_given):
                if sorted(cyc) != sorted(self.vertex_halves[v]):
                    raise ValidationError(
                        f"rotation at {self.vertex_ids[v]} is not a permutation of its half-edges",
                        self.vertex_ids[v],
                    )

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        endpoints: Sequence[tuple[str, str]],
        edge_ids: Sequence[str] | None = None,
        vertex_ids: Sequence[str] | None = None,
        rotation: Mapping[str, Sequence[str]] | None = None,
    ) -> HalfEdgeGraph:
        """Build from ``(u, v)`` endpoint pairs.

        Edge ``e`` gets half-edges ``"e.0"`` (at ``u``) and ``"e.1"`` (at
        ``v``).  ``rotation`` maps a vertex to half-edge ids in cyclic order.
        """
        if edge_ids is None:
            edge_ids = [f"e{i + 1}" for i in range(len(endpoints))]
        if vertex_ids is None:
            seen: dict[str, None] = {}
            for u, v in endpoints:
                seen.setdefault(u)
                seen.setdefault(v)
            vertex_ids = list(seen)
        vindex = {v: i for i, v in enumerate(vertex_ids)}
        half_ids, half_vertex, edge_halves = [], [], []
        for eid, (u, v) in zip(edge_ids, endpoints):
            half_ids += [f"{eid}.0", f"{eid}.1"]
            half_vertex += [vindex[u], vindex[v]]
            edge_halves.append((len(half_ids) - 2, len(half_ids) - 1))
        rot = None
        if rotation is not None:
            hindex = {h: i for i, h in enumerate(half_ids)}
            rot = tuple(tuple(hindex[h] for h in rotation[v]) for v in vertex_ids)
        return cls(tuple(vertex_ids), tuple(half_ids), tuple(half_vertex), tuple(edge_ids), tuple(edge_halves), rot)

    def with_rotation(self, rotation: Sequence[Sequence[int]] | None) -> HalfEdgeGraph:
        rot = None if rotation is None else tuple(tuple(c) for c in rotation)
        return HalfEdgeGraph(self.vertex_ids, self.half_ids, self.half_vertex, self.edge_ids, self.edge_halves, rot)

    # -- derived structure ---------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_ids)

    @property
    def n_edges(self) -> int:
        return len(self.edge_ids)

    @property
    def n_halves(self) -> int:
        return len(self.half_ids)

    @cached_property
    def half_edge(self) -> tuple[int, ...]:
        owner = [0] * self.n_halves
        for e, (a, b) in enumerate(self.edge_halves):
            owner[a] = owner[b] = e
        return tuple(owner)

    @cached_property
    def mate(self) -> tuple[int, ...]:
        m = [0] * self.n_halves
        for a, b in self.edge_halves:
            m[a], m[b] = b, a
        return tuple(m)

    @cached_property
    def vertex_halves(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.vertex_ids]
        for h, v in enumerate(self.half_vertex):
            out[v].append(h)
        return tuple(tuple(x) for x in out)

    @property
    def rotation(self) -> tuple[tuple[int, ...], ...]:
        return self.rotation_given if self.rotation_given is not None else self.vertex_halves

    @cached_property
    def successor(self) -> tuple[int, ...]:
        """Next half-edge in the rotation around its vertex."""
        nxt = [0] * self.n_halves
        for cyc in self.rotation:
            for i, h in enumerate(cyc):
                nxt[h] = cyc[(i + 1) % len(cyc)]
        return tuple(nxt)

    @cached_property
    def predecessor(self) -> tuple[int, ...]:
        prv = [0] * self.n_halves
        for h, s in enumerate(self.successor):
            prv[s] = h
        return tuple(prv)

    @cached_property
    def endpoints(self) -> tuple[tuple[int, int], ...]:
        return tuple((self.half_vertex[a], self.half_vertex[b]) for a, b in self.edge_halves)

    def valency(self, v: int) -> int:
        return len(self.vertex_halves[v])

    @cached_property
    def leaves(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n_vertices) if self.valency(v) == 1)

    @cached_property
    def edge0(self) -> tuple[int, ...]:
        """Edges with no 1-valent endpoint."""
        return tuple(e for e, (u, v) in enumerate(self.endpoints) if u not in self.leaves and v not in self.leaves)

    def edge_index(self, label: str) -> int:
        try:
            return self.edge_ids.index(label)
        except ValueError:
            raise ValidationError(f"unknown edge {label!r}", label) from None

    def components_without(self, removed: Iterable[int] = ()) -> int:
        removed = set(removed)
        return count_components(self.n_vertices, (p for e, p in enumerate(self.endpoints) if e not in removed))

    def is_connected(self) -> bool:
        return self.components_without() == 1

    def structurally_equal(self, other: HalfEdgeGraph) -> bool:
        return (
            self.vertex_ids == other.vertex_ids
            and self.half_ids == other.half_ids
            and self.half_vertex == other.half_vertex
            and self.edge_ids == other.edge_ids
            and self.edge_halves == other.edge_halves
            and self.rotation == other.rotation
        )


@dataclass(frozen=True)
class GraphInvolution:
    perm: tuple[int, ...]

    @classmethod
    def identity(cls, g: HalfEdgeGraph) -> GraphInvolution:
        return cls(tuple(range(g.n_halves)))

    @classmethod
    def from_mapping(cls, g: HalfEdgeGraph, mapping: Mapping[str, str]) -> GraphInvolution:
        """Half-edges absent from ``mapping`` are fixed; pairs may be listed one way only."""
        index = {h: i for i, h in enumerate(g.half_ids)}
        perm = list(range(g.n_halves))
        for a, b in mapping.items():
            for h in (a, b):
                if h not in index:
                    raise ValidationError(f"tau mentions unknown half-edge {h!r}", h)
            ia, ib = index[a], index[b]
            if perm[ia] not in (ia, ib) or perm[ib] not in (ib, ia):
                raise NotInvolution(f"tau assigns {a!r} or {b!r} twice", a)
            perm[ia], perm[ib] = ib, ia
        return cls(tuple(perm))

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def vertex_map(self, g: HalfEdgeGraph) -> tuple[int, ...]:
        out = []
        for v in range(g.n_vertices):
            halves = g.vertex_halves[v]
            out.append(g.half_vertex[self.perm[halves[0]]] if halves else v)
        return tuple(out)

    def edge_map(self, g: HalfEdgeGraph) -> tuple[int, ...]:
        return tuple(g.half_edge[self.perm[a]] for a, _ in g.edge_halves)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate(g: HalfEdgeGraph, t: GraphInvolution) -> None:
    """Raise unless ``(g, t)`` is a connected real trivalent graph."""
    n = g.n_halves
    perm = t.perm
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise NotInvolution("tau is not a permutation of the half-edges")
    for h in range(n):
        if perm[perm[h]] != h:
            raise NotInvolution(f"tau is not involutive at {g.half_ids[h]}", g.half_ids[h])
    for v in range(g.n_vertices):
        if g.valency(v) not in (1, 3):
            raise NonTrivalent(f"vertex {g.vertex_ids[v]} has valency {g.valency(v)}", g.vertex_ids[v])
    for v in range(g.n_vertices):
        images = {g.half_vertex[perm[h]] for h in g.vertex_halves[v]}
        if len(images) != 1:
            raise NotInvolution(f"tau does not map the half-edges at {g.vertex_ids[v]} to one vertex", g.vertex_ids[v])
    for e, (a, b) in enumerate(g.edge_halves):
        ta, tb = perm[a], perm[b]
        if g.mate[ta] != tb:
            raise NotInvolution(f"tau does not map edge {g.edge_ids[e]} onto an edge", g.edge_ids[e])
        if ta == b:
            raise EdgeReversal(f"tau reverses edge {g.edge_ids[e]}", g.edge_ids[e])
    if g.n_vertices == 0 or not g.is_connected():
        raise Disconnected("graph is not connected")


# ---------------------------------------------------------------------------
# Quotient
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuotientGraph:
    """``Gamma / tau`` with the projection recorded on vertices, half-edges and edges.

    ``graph`` is an ordinary HalfEdgeGraph (valency 2 allowed) whose labels are
    those of the smallest-index representative of each orbit.
    """

    graph: HalfEdgeGraph
    vertex_map: tuple[int, ...]
    half_map: tuple[int, ...]
    edge_map: tuple[int, ...]
    fibers: tuple[tuple[int, ...], ...]
    edge0: tuple[int, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return self.graph.edge_ids

    @property
    def edge0_labels(self) -> tuple[str, ...]:
        return tuple(self.graph.edge_ids[q] for q in self.edge0)


def _orbit_reps(perm_like: Sequence[int]) -> tuple[list[int], list[int]]:
    """Representatives (smallest member) of orbits of an involution, plus index map."""
    reps: list[int] = []
    to_orbit = [-1] * len(perm_like)
    for i, j in enumerate(perm_like):
        if to_orbit[i] != -1:
            continue
        to_orbit[i] = len(reps)
        to_orbit[j] = len(reps)
        reps.append(min(i, j))
    return reps, to_orbit


def quotient(g: HalfEdgeGraph, t: GraphInvolution) -> QuotientGraph:
    vmap = t.vertex_map(g)
    emap = t.edge_map(g)
    vreps, vorb = _orbit_reps(vmap)
    hreps, horb = _orbit_reps(t.perm)
    ereps, eorb = _orbit_reps(emap)

    q_half_vertex = [vorb[g.half_vertex[h]] for h in hreps]
    q_edges = []
    for e in ereps:
        a, b = g.edge_halves[e]
        q_edges.append((horb[a], horb[b]))

    rot = None
    if g.rotation_given is not None:
        rot = []
        for v in vreps:
            seen: list[int] = []
            for h in g.rotation[v]:
                if horb[h] not in seen:
                    seen.append(horb[h])
            rot.append(tuple(seen))
        rot = tuple(rot)

    qg = HalfEdgeGraph(
        tuple(g.vertex_ids[v] for v in vreps),
        tuple(g.half_ids[h] for h in hreps),
        tuple(q_half_vertex),
        tuple(g.edge_ids[e] for e in ereps),
        tuple(q_edges),
        rot,
    )
    fibers = [[] for _ in ereps]
    for e in range(g.n_edges):
        fibers[eorb[e]].append(e)
    return QuotientGraph(
        graph=qg,
        vertex_map=tuple(vorb),
        half_map=tuple(horb),
        edge_map=tuple(eorb),
        fibers=tuple(tuple(f) for f in fibers),
        edge0=qg.edge0,
    )


# ---------------------------------------------------------------------------
# Cycle space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles of a deterministic BFS spanning tree.

    ``u[f]`` is the incidence vector of edge ``f``: bit ``i`` is set iff ``f``
    lies on cycle ``i``.
    """

    tree_edges: frozenset[int]
    non_tree: tuple[int, ...]
    cycles: tuple[frozenset[int], ...]
    u: tuple[int, ...]

    @property
    def genus(self) -> int:
        return len(self.non_tree)


def spanning_tree(g: HalfEdgeGraph) -> frozenset[int]:
    """BFS tree from vertex 0, scanning incident edges by increasing index."""
    incident: list[list[int]] = [[] for _ in range(g.n_vertices)]
    for e, (u, v) in enumerate(g.endpoints):
        incident[u].append(e)
        if v != u:
            incident[v].append(e)
    for lst in incident:
        lst.sort()
    seen = [False] * g.n_vertices
    tree = set()
    if g.n_vertices == 0:
        return frozenset()
    seen[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for e in incident[x]:
            u, v = g.endpoints[e]
            y = v if u == x else u
            if not seen[y]:
                seen[y] = True
                tree.add(e)
                queue.append(y)
    return frozenset(tree)


def _tree_path(g: HalfEdgeGraph, tree: frozenset[int], a: int, b: int) -> set[int]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n_vertices)]
    for e in tree:
        u, v = g.endpoints[e]
        adj[u].append((v, e))
        adj[v].append((u, e))
    prev: dict[int, tuple[int, int] | None] = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y, e in adj[x]:
            if y not in prev:
                prev[y] = (x, e)
                queue.append(y)
    path = set()
    x = b
    while prev[x] is not None:
        x, e = prev[x]
        path.add(e)
    return path


def cycle_basis(g: HalfEdgeGraph) -> CycleBasis:
    tree = spanning_tree(g)
    non_tree = tuple(e for e in range(g.n_edges) if e not in tree)
    cycles = []
    for e in non_tree:
        u, v = g.endpoints[e]
        cycles.append(frozenset(_tree_path(g, tree, u, v) | {e}))
    u_vec = [0] * g.n_edges
    for i, cyc in enumerate(cycles):
        for f in cyc:
            u_vec[f] |= 1 << i
    return CycleBasis(tree, non_tree, tuple(cycles), tuple(u_vec))


def genus(g: HalfEdgeGraph) -> int:
    return g.n_edges - g.n_vertices + 1


def is_cycle(g: HalfEdgeGraph, edges: Iterable[int]) -> bool:
    """True iff every vertex meets ``edges`` an even number of times (a Z/2 1-cycle)."""
    parity = [0] * g.n_vertices
    for e in edges:
        u, v = g.endpoints[e]
        parity[u] ^= 1
        parity[v] ^= 1
    return not any(parity)


# ---------------------------------------------------------------------------
# Cuts
# ---------------------------------------------------------------------------

def bridges(g: HalfEdgeGraph) -> frozenset[int]:
    base = g.components_without()
    return frozenset(e for e in range(g.n_edges) if g.components_without([e]) > base)


def quotient_bridges(g: HalfEdgeGraph, t: GraphInvolution, q: QuotientGraph | None = None) -> frozenset[int]:
    """Disconnecting edges of ``Gamma / tau`` that lie in its Edge^0 (quotient indices)."""
    q = q or quotient(g, t)
    b = bridges(q.graph)
    return frozenset(e for e in q.edge0 if e in b)


def disconnecting_pairs(
    g: HalfEdgeGraph, t: GraphInvolution, q: QuotientGraph | None = None
) -> frozenset[frozenset[int]]:
    """Pairs ``{pi(e), pi(e')}`` of quotient edges whose lifts jointly disconnect ``Gamma``.

    Both ``e, e'`` range over Edge^0 of ``Gamma`` and their images must not be
    quotient bridges.  Evaluated literally: remove, then test connectivity.
    """
    q = q or quotient(g, t)
    qb = quotient_bridges(g, t, q)
    candidates = [e for e in g.edge0 if q.edge_map[e] not in qb]
    out = set()
    for e, f in combinations(candidates, 2):
        if g.components_without((e, f)) > 1:
            out.add(frozenset((q.edge_map[e], q.edge_map[f])))
    return frozenset(out)


def is_three_edge_connected(g: HalfEdgeGraph) -> bool:
    for e in range(g.n_edges):
        if g.components_without([e]) > 1:
            return False
    for e, f in combinations(range(g.n_edges), 2):
        if g.components_without((e, f)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# JSON file format
# ---------------------------------------------------------------------------

def graph_from_dict(data: Mapping) -> tuple[HalfEdgeGraph, GraphInvolution]:
    try:
        vertex_ids = [str(v) for v in data["vertices"]]
        halves = data["half_edges"]
        raw_edges = data["edges"]
    except KeyError as exc:
        raise ValidationError(f"graph file lacks key {exc.args[0]!r}", exc.args[0]) from None
    vindex = {v: i for i, v in enumerate(vertex_ids)}
    half_ids, half_vertex = [], []
    for rec in halves:
        hid, vid = str(rec["id"]), str(rec["vertex"])
        if vid not in vindex:
            raise ValidationError(f"half-edge {hid} refers to unknown vertex {vid}", hid)
        half_ids.append(hid)
        half_vertex.append(vindex[vid])
    hindex = {h: i for i, h in enumerate(half_ids)}
    edge_ids, edge_halves = [], []
    for i, rec in enumerate(raw_edges):
        if isinstance(rec, Mapping):
            eid, pair = str(rec["id"]), rec["half_edges"]
        else:
            eid, pair = f"e{i + 1}", rec
        if len(pair) != 2:
            raise ValidationError(f"edge {eid} must have two half-edges", eid)
        try:
            edge_halves.append((hindex[str(pair[0])], hindex[str(pair[1])]))
        except KeyError as exc:
            raise ValidationError(f"edge {eid} uses unknown half-edge {exc.args[0]}", eid) from None
        edge_ids.append(eid)
    rot = None
    if data.get("rotation") is not None:
        rmap = {str(k): [str(h) for h in v] for k, v in data["rotation"].items()}
        missing = [v for v in vertex_ids if v not in rmap]
        if missing:
            raise ValidationError(f"rotation misses vertex {missing[0]}", missing[0])
        try:
            rot = tuple(tuple(hindex[h] for h in rmap[v]) for v in vertex_ids)
        except KeyError as exc:
            raise ValidationError(f"rotation uses unknown half-edge {exc.args[0]}", exc.args[0]) from None
    g = HalfEdgeGraph(tuple(vertex_ids), tuple(half_ids), tuple(half_vertex), tuple(edge_ids), tuple(edge_halves), rot)
    tau_map = {str(k): str(v) for k, v in (data.get("tau") or {}).items()}
    t = GraphInvolution.from_mapping(g, tau_map)
    return g, t


def graph_to_dict(g: HalfEdgeGraph, t: GraphInvolution | None = None) -> dict:
    default_ids = all(eid == f"e{i + 1}" for i, eid in enumerate(g.edge_ids))
    edges: list = []
    for eid, (a, b) in zip(g.edge_ids, g.edge_halves):
        pair = [g.half_ids[a], g.half_ids[b]]
        edges.append(pair if default_ids else {"id": eid, "half_edges": pair})
    out: dict = {
        "vertices": list(g.vertex_ids),
        "half_edges": [{"id": h, "vertex": g.vertex_ids[v]} for h, v in zip(g.half_ids, g.half_vertex)],
        "edges": edges,
    }
    if g.rotation_given is not None:
        out["rotation"] = {g.vertex_ids[v]: [g.half_ids[h] for h in cyc] for v, cyc in enumerate(g.rotation_given)}
    if t is not None and not t.is_identity():
        out["tau"] = {g.half_ids[h]: g.half_ids[p] for h, p in enumerate(t.perm) if h < p}
    return out


def load_graph(path: str | Path) -> tuple[HalfEdgeGraph, GraphInvolution]:
    with open(path, encoding="utf-8") as fh:
        return graph_from_dict(json.load(fh))
