"""Seeded random real trivalent graphs (pairing model with rejection).

With ``tau = Id`` this is the usual configuration model on stubs.  For a
non-trivial involution the stubs are generated already carrying the action:
fixed stubs (at vertices fixing all of their half-edges, at fixed vertices
swapping two half-edges, or at fixed leaves) are paired among themselves,
and the remaining stubs come in tau-orbits which are paired equivariantly.
Disconnected outcomes are rejected.
"""

from __future__ import annotations

import random

from .graph import GraphInvolution, HalfEdgeGraph, validate

MAX_ATTEMPTS = 1000


def _assemble(half_vertex: list[int], pairs: list[tuple[int, int]], perm: list[int], rng: random.Random, n_vertices: int):
    vertex_ids = tuple(f"v{i}" for i in range(n_vertices))
    half_ids = tuple(f"h{i}" for i in range(len(half_vertex)))
    edge_ids = tuple(f"e{i + 1}" for i in range(len(pairs)))
    at: list[list[int]] = [[] for _ in range(n_vertices)]
    for h, v in enumerate(half_vertex):
        at[v].append(h)
    rotation = []
    for halves in at:
        halves = list(halves)
        rng.shuffle(halves)
        rotation.append(tuple(halves))
    g = HalfEdgeGraph(vertex_ids, half_ids, tuple(half_vertex), edge_ids, tuple(pairs), tuple(rotation))
    return g, GraphInvolution(tuple(perm))


def random_identity_graph(rng: random.Random, max_vertices: int = 20):
    """Connected trivalent multigraph with ``tau = Id`` and a random rotation."""
    for _ in range(MAX_ATTEMPTS):
        n3 = rng.randint(1, max(1, max_vertices - 2))
        n1 = rng.randint(0, min(n3 + 2, max_vertices - n3))
        if (3 * n3 + n1) % 2:
            n1 += 1 if n3 + n1 < max_vertices else -1
        if n1 < 0 or (3 * n3 + n1) % 2 or n3 + n1 > max_vertices:
            continue
        half_vertex = [v for v in range(n3) for _ in range(3)] + list(range(n3, n3 + n1))
        stubs = list(range(len(half_vertex)))
        rng.shuffle(stubs)
        pairs = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
        g, t = _assemble(half_vertex, pairs, list(range(len(half_vertex))), rng, n3 + n1)
        if g.is_connected():
            validate(g, t)
            return g, t
    raise RuntimeError("could not draw a connected graph")


def random_symmetric_graph(rng: random.Random, max_vertices: int = 20, free: bool | None = None):
    """Connected trivalent graph with a non-trivial involution."""
    for _ in range(MAX_ATTEMPTS):
        if free is None:
            is_free = rng.random() < 0.15
        else:
            is_free = free
        if is_free:
            n_s3 = n_st = n_fl = 0
        else:
            n_s3 = rng.randint(0, 3)
            n_st = rng.randint(0, 4)
            n_fl = rng.randint(0, 2)
        n_p3 = rng.randint(0 if n_s3 + n_st + n_fl else 1, 4)
        n_p1 = rng.randint(0, 2)
        n_vertices = n_s3 + n_st + n_fl + 2 * (n_p3 + n_p1)
        fixed_stub_count = 3 * n_s3 + n_st + n_fl
        orbit_count = n_st + 3 * n_p3 + n_p1
        if n_vertices == 0 or n_vertices > max_vertices:
            continue
        if fixed_stub_count % 2 or orbit_count % 2 or orbit_count == 0:
            continue

        half_vertex: list[int] = []
        perm: list[int] = []
        fixed_stubs: list[int] = []
        orbits: list[tuple[int, int]] = []

        def new_half(v: int) -> int:
            half_vertex.append(v)
            perm.append(len(perm))
            return len(half_vertex) - 1

        def swap(a: int, b: int) -> None:
            perm[a], perm[b] = b, a
            orbits.append((a, b))

        v = 0
        for _ in range(n_s3):
            fixed_stubs += [new_half(v) for _ in range(3)]
            v += 1
        for _ in range(n_st):
            fixed_stubs.append(new_half(v))
            swap(new_half(v), new_half(v))
            v += 1
        for _ in range(n_fl):
            fixed_stubs.append(new_half(v))
            v += 1
        for valency in [3] * n_p3 + [1] * n_p1:
            for _ in range(valency):
                swap(new_half(v), new_half(v + 1))
            v += 2

        rng.shuffle(fixed_stubs)
        pairs = [(fixed_stubs[i], fixed_stubs[i + 1]) for i in range(0, len(fixed_stubs), 2)]
        rng.shuffle(orbits)
        for i in range(0, len(orbits), 2):
            (h, th), (k, tk) = orbits[i], orbits[i + 1]
            if rng.random() < 0.5:
                k, tk = tk, k
            pairs += [(h, k), (th, tk)]
        g, t = _assemble(half_vertex, pairs, perm, rng, n_vertices)
        if g.is_connected():
            validate(g, t)
            return g, t
    raise RuntimeError("could not draw a connected symmetric graph")


def random_real_graph(rng: random.Random, max_vertices: int = 20, p_identity: float = 0.4):
    if rng.random() < p_identity:
        return random_identity_graph(rng, max_vertices)
    return random_symmetric_graph(rng, max_vertices)


def random_real_graphs(count: int, seed: int = 0, max_vertices: int = 20):
    rng = random.Random(seed)
    return [random_real_graph(rng, max_vertices) for _ in range(count)]
