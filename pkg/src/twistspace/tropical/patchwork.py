"""Twist-admissible sets, Haas' criterion, sign distributions and patchworking.

Arc model: at a curve vertex with counterclockwise rotation ``(h0, h1, h2)``
arc ``A_i`` runs from slot ``(h_i, 1)`` to slot ``(h_{i+1}, 0)``, so the two
arcs touching ``h_i`` are ``A_{i-1}`` and ``A_i``; their quadrant signs differ
by ``f_e = ((-1)^x_e, (-1)^y_e)``.  Along a bounded edge ``{h, h'}`` slots are
joined straight, ``(h, s)-(h', 1-s)``, or crossed when the edge is twisted,
``(h, s)-(h', s)``.  Joined arcs form one strand and share their sign.  In
compact mode the two strands of every ray are joined at infinity.

This is literally the slot model the real-part tracer uses on the
compactified graph; :func:`viro_count` is the independent check, computing
components from a sign distribution by reflecting the triangulation into the
four quadrants.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from ..errors import ConsistencyError, NotTwistAdmissible, UnknownLabel
from ..graph import _UnionFind
from ..wspace import _cycles, direction_basis
from .curve import TropicalCurve

Sign = tuple[int, int]
SignDistribution = dict[tuple[int, int], int]

_QUADRANTS: tuple[Sign, ...] = ((1, 1), (-1, 1), (-1, -1), (1, -1))


def _flip(d) -> Sign:
    return (-1 if d[0] & 1 else 1, -1 if d[1] & 1 else 1)


def _mul(a: Sign, b: Sign) -> Sign:
    return a[0] * b[0], a[1] * b[1]


def _mono(s: Sign, p) -> int:
    """``s^p = s_1^{p_x} s_2^{p_y}``."""
    return (s[0] if p[0] & 1 else 1) * (s[1] if p[1] & 1 else 1)


def twist_indices(c: TropicalCurve, twists: Iterable) -> frozenset[int]:
    """Bounded-edge ids (or indices) to indices into ``c.edges``."""
    pos = {e.id: i for i, e in enumerate(c.edges)}
    out = set()
    for t in twists:
        if isinstance(t, str):
            if t not in pos:
                raise UnknownLabel(f"{t!r} is not a bounded edge of the curve", t)
            out.add(pos[t])
        else:
            if not 0 <= int(t) < len(c.edges):
                raise UnknownLabel(f"bounded edge index {t} out of range", t)
            out.add(int(t))
    return frozenset(out)


def twist_ids(c: TropicalCurve, idx: Iterable[int]) -> tuple[str, ...]:
    return tuple(c.edges[i].id for i in sorted(idx))


def is_twist_admissible(c: TropicalCurve, twists: Iterable) -> bool:
    tset = twist_indices(c, twists)
    # Bounded edges come first in the graph, so graph edge index == curve edge index.
    for cyc in _cycles(c.graph).cycles:
        sx = sy = 0
        for e in cyc & tset:
            x, y = c.edges[e].direction
            sx ^= x & 1
            sy ^= y & 1
        if sx or sy:
            return False
    return True


def _require_admissible(c: TropicalCurve, tset: frozenset[int]) -> None:
    if not is_twist_admissible(c, tset):
        raise NotTwistAdmissible(f"twist set {list(twist_ids(c, tset))} violates the mod-2 cycle condition", twist_ids(c, tset))


def is_haas_maximal(c: TropicalCurve, twists: Iterable) -> bool:
    """Literal evaluation of the two maximality conditions on a twist-admissible set."""
    tset = twist_indices(c, twists)
    _require_admissible(c, tset)
    for cyc in _cycles(c.graph).cycles:
        if len(cyc & tset) % 2:
            return False
    g = c.graph
    for e in tset:
        if g.components_without((e,)) > 1:
            continue
        if not any(
            f != e and g.components_without((f,)) == 1 and g.components_without((e, f)) > 1 for f in tset
        ):
            return False
    return True


def w_twist(c: TropicalCurve, twists: Iterable):
    """The twist set as a vector over the direction basis of ``(Gamma_C, Id)``."""
    ids = twist_ids(c, twist_indices(c, twists))
    return direction_basis(c.graph, c.tau).twist(ids)


# ---------------------------------------------------------------------------
# Sign distributions
# ---------------------------------------------------------------------------

def harnack_sign(p) -> int:
    return 1 if p[0] % 2 == 0 and p[1] % 2 == 0 else -1


def harnack_signs(points: Iterable) -> SignDistribution:
    return {tuple(p): harnack_sign(p) for p in points}


def _vertex_symmetry(tri, nu: Mapping) -> tuple[Sign, int]:
    found = None
    for mu in _QUADRANTS:
        for lam in (1, -1):
            if all(nu[p] * _mono(mu, p) == lam * harnack_sign(p) for p in tri):
                if found is not None:
                    raise ConsistencyError(f"symmetry of triangle {list(tri)} is not unique")
                found = (mu, lam)
    if found is None:
        raise ConsistencyError(f"no axial symmetry matches signs on triangle {list(tri)}")
    return found


def vertex_symmetries(c: TropicalCurve, nu: Mapping) -> list[tuple[Sign, int]]:
    """``(s_v, lambda_v)`` per curve vertex with ``nu(p) s_v^p = lambda_v eps(p)`` on its triangle."""
    missing = [p for p in c.poly.support if p not in nu]
    if missing:
        raise UnknownLabel(f"sign distribution misses support point {missing[0]}", missing[0])
    return [_vertex_symmetry(tri, nu) for tri in c.triangles]


def signs_to_twists(c: TropicalCurve, nu: Mapping) -> frozenset[str]:
    sym = vertex_symmetries(c, nu)
    return frozenset(e.id for e in c.edges if sym[e.ends[0]][0] != sym[e.ends[1]][0])


def twists_to_signs(c: TropicalCurve, twists: Iterable) -> SignDistribution:
    """A sign distribution realizing ``twists``, seeded with ``s = (+,+)``, ``lambda = +1`` at ``v1``."""
    tset = twist_indices(c, twists)
    _require_admissible(c, tset)
    n = len(c.vertices)
    state: list[tuple[Sign, int] | None] = [None] * n
    state[0] = ((1, 1), 1)
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, e in enumerate(c.edges):
        adj[e.ends[0]].append(i)
        adj[e.ends[1]].append(i)
    queue = deque([0])
    while queue:
        v = queue.popleft()
        s_v, lam_v = state[v]
        for i in adj[v]:
            e = c.edges[i]
            w = e.ends[1] if e.ends[0] == v else e.ends[0]
            s_w = _mul(s_v, _flip(e.direction)) if i in tset else s_v
            p = e.dual[0]
            new = (s_w, lam_v * _mono(s_v, p) * _mono(s_w, p))
            if state[w] is None:
                state[w] = new
                queue.append(w)
            elif state[w] != new:
                raise ConsistencyError(f"sign propagation conflict across {e.id}")
    nu: SignDistribution = {}
    for (s, lam), tri in zip(state, c.triangles):
        for p in tri:
            val = harnack_sign(p) * _mono(s, p) * lam
            if nu.setdefault(p, val) != val:
                raise ConsistencyError(f"support point {p} receives both signs")
    return nu


def act(nu: Mapping, s: Sign, lam: int = 1) -> SignDistribution:
    """Image of ``nu`` under the axial symmetry ``s`` and global sign ``lam``."""
    return {p: lam * v * _mono(s, p) for p, v in nu.items()}


def equivalent_signs(a: Mapping, b: Mapping, global_sign: bool = True) -> bool:
    """Equal up to axial symmetries (and, by default, an overall sign)."""
    if set(a) != set(b):
        return False
    lams = (1, -1) if global_sign else (1,)
    return any(act(a, s, lam) == dict(b) for s in _QUADRANTS for lam in lams)


# ---------------------------------------------------------------------------
# Arcs
# ---------------------------------------------------------------------------

Slot = tuple[str, int]


@dataclass(frozen=True)
class Arc:
    owner: str
    slots: tuple[Slot, Slot]
    sign: Sign


@dataclass(frozen=True)
class ArcSet:
    arcs: tuple[Arc, ...]
    joins: tuple[tuple[Slot, Slot], ...]
    caps: tuple[tuple[Slot, Slot], ...]

    def __len__(self) -> int:
        return len(self.arcs)

    def quadrants(self) -> set[Sign]:
        return {a.sign for a in self.arcs}


def patchwork_arcs(c: TropicalCurve, twists: Iterable = ()) -> ArcSet:
    tset = twist_indices(c, twists)
    _require_admissible(c, tset)
    g = c.graph
    arcs: list[tuple[str, tuple[Slot, Slot]]] = []
    # (arc a, arc b, factor): sign(b) = sign(a) * factor
    links: list[tuple[int, int, Sign]] = []
    arc_at: dict[Slot, int] = {}
    for v in range(len(c.vertices)):
        out = c.outgoing(v)
        base = len(arcs)
        for i in range(3):
            h, nxt = g.half_ids[out[i][2]], g.half_ids[out[(i + 1) % 3][2]]
            arc_at[(h, 1)] = arc_at[(nxt, 0)] = len(arcs)
            arcs.append((c.vertex_ids[v], ((h, 1), (nxt, 0))))
        for i in range(3):
            links.append((base + (i - 1) % 3, base + i, _flip(out[i][1])))

    joins = []
    for i, e in enumerate(c.edges):
        a, b = (g.half_ids[h] for h in g.edge_halves[i])
        for s in (0, 1):
            other = (b, s) if i in tset else (b, 1 - s)
            joins.append(((a, s), other))
            links.append((arc_at[(a, s)], arc_at[other], (1, 1)))
    caps = []
    for k, r in enumerate(c.rays, start=len(c.edges)):
        h = g.half_ids[g.edge_halves[k][0]]
        caps.append(((h, 0), (h, 1)))

    signs: list[Sign | None] = [None] * len(arcs)
    adj: list[list[tuple[int, Sign]]] = [[] for _ in arcs]
    for a, b, f in links:
        adj[a].append((b, f))
        adj[b].append((a, f))
    for seed in range(len(arcs)):
        if signs[seed] is not None:
            continue
        signs[seed] = (1, 1)
        queue = deque([seed])
        while queue:
            a = queue.popleft()
            for b, f in adj[a]:
                want = _mul(signs[a], f)
                if signs[b] is None:
                    signs[b] = want
                    queue.append(b)
                elif signs[b] != want:
                    raise ConsistencyError(f"sign rule inconsistent at arc {arcs[b][1]} of an admissible twist set")
    return ArcSet(
        tuple(Arc(owner, slots, sign) for (owner, slots), sign in zip(arcs, signs)),
        tuple(joins),
        tuple(caps),
    )


def count_components(arcs: ArcSet, compact: bool = False) -> int:
    """Components of the glued arc system; ``compact`` also joins the two strands of each ray."""
    at = {}
    for i, a in enumerate(arcs.arcs):
        for s in a.slots:
            at[s] = i
    uf = _UnionFind(len(arcs.arcs))
    comps = len(arcs.arcs)
    pairs = list(arcs.joins) + (list(arcs.caps) if compact else [])
    for x, y in pairs:
        if uf.union(at[x], at[y]):
            comps -= 1
    return comps


def disjoint_union(a: ArcSet, b: ArcSet, tags: tuple[str, str] = ("A", "B")) -> ArcSet:
    def tag(arcs: ArcSet, t: str) -> ArcSet:
        def sl(s: Slot) -> Slot:
            return (f"{t}:{s[0]}", s[1])

        return ArcSet(
            tuple(Arc(f"{t}:{x.owner}", (sl(x.slots[0]), sl(x.slots[1])), x.sign) for x in arcs.arcs),
            tuple((sl(x), sl(y)) for x, y in arcs.joins),
            tuple((sl(x), sl(y)) for x, y in arcs.caps),
        )

    ta, tb = tag(a, tags[0]), tag(b, tags[1])
    return ArcSet(ta.arcs + tb.arcs, ta.joins + tb.joins, ta.caps + tb.caps)


def component_count(c: TropicalCurve, twists: Iterable = (), compact: bool = False) -> int:
    return count_components(patchwork_arcs(c, twists), compact=compact)


# ---------------------------------------------------------------------------
# Independent oracle: Viro's sign rule on the reflected triangulation
# ---------------------------------------------------------------------------

def viro_count(c: TropicalCurve, nu: Mapping, compact: bool = False) -> int:
    """Components of the patchworked curve computed from signs alone.

    In the copy of the triangulation reflected into quadrant ``q`` a point
    ``p`` carries ``nu(p) q^p``; each triangle with a sign change holds one
    segment joining the midpoints of its two sign-changing edges.  Nodes are
    (quadrant, subdivision edge).  In compact mode a boundary edge in quadrant
    ``q`` is identified with the same edge in ``q * f`` where ``f`` is the
    parity of its ray.
    """
    nodes: dict[tuple[Sign, frozenset], int] = {}
    segments: list[tuple[int, int]] = []

    def node(q, a, b) -> int:
        return nodes.setdefault((q, frozenset((a, b))), len(nodes))

    for q in _QUADRANTS:
        for tri in c.triangles:
            sg = {p: nu[p] * _mono(q, p) for p in tri}
            changing = [(tri[i], tri[(i + 1) % 3]) for i in range(3) if sg[tri[i]] != sg[tri[(i + 1) % 3]]]
            if changing:
                (a, b), (x, y) = changing
                segments.append((node(q, a, b), node(q, x, y)))
    uf = _UnionFind(len(nodes))
    for a, b in segments:
        uf.union(a, b)
    if compact:
        for r in c.rays:
            a, b = r.dual
            f = _flip(r.direction)
            for q in _QUADRANTS:
                k1, k2 = (q, frozenset((a, b))), (_mul(q, f), frozenset((a, b)))
                if k1 in nodes and k2 in nodes:
                    uf.union(nodes[k1], nodes[k2])
    return len({uf.find(i) for i in range(len(nodes))})


def exhaustive_twist_sets(c: TropicalCurve):
    """All subsets of bounded edges as index frozensets, in mask order."""
    m = len(c.edges)
    for mask in range(1 << m):
        yield frozenset(i for i in range(m) if (mask >> i) & 1)
