"""Tracing the fixed circles of a lift combinatorially.

Every tau-fixed half-edge ``h`` carries two *slots* ``(h, 0)`` and
``(h, 1)``: the two real points on the boundary circle of its cylinder.
Two perfect matchings on slots describe the real part:

* vertex arcs from the local real models -- at a vertex fixing all three
  half-edges, with rotation ``(h1, h2, h3)``, arcs ``(h_i, 1)-(h_{i+1}, 0)``;
  at a fixed vertex swapping two half-edges, one arc ``(h1, 0)-(h1, 1)`` on the
  fixed half-edge; at a fixed leaf, ``(h, 0)-(h, 1)``;
* edge connectors on each pointwise fixed edge ``{h, h'}`` --
  ``(h, s)-(h', 1-s)`` untwisted and ``(h, s)-(h', s)`` twisted.

Their union is a disjoint union of circles, one per component of the real
part.  With ``tau = Id`` and no twist this is the boundary of the ribbon
surface defined by the rotation, which fixes the reference lift.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import CapExceeded, ConsistencyError, CosetViolation, EmptyRealPart, MissingRotation, UnknownLabel
from .gf2 import Gf2Subspace, Gf2Vector
from .graph import GraphInvolution, HalfEdgeGraph, genus, validate
from .wspace import TwistVector, direction_basis, w_kernel

DEFAULT_CAP = 20


@dataclass(frozen=True)
class SlotMatching:
    """Slot ``2*j + b`` is ``(fixed_halves[j], b)``; mates are slot indices."""

    fixed_halves: tuple[int, ...]
    arc_mate: np.ndarray
    plain_mate: np.ndarray
    twist_mate: np.ndarray
    coord: np.ndarray

    @property
    def n_slots(self) -> int:
        return 2 * len(self.fixed_halves)

    def slot_name(self, g: HalfEdgeGraph, s: int) -> tuple[str, int]:
        return g.half_ids[self.fixed_halves[s // 2]], s % 2


@lru_cache(maxsize=512)
def slot_matching(g: HalfEdgeGraph, t: GraphInvolution) -> SlotMatching:
    perm = t.perm
    fixed = tuple(h for h in range(g.n_halves) if perm[h] == h)
    pos = {h: j for j, h in enumerate(fixed)}
    n = 2 * len(fixed)
    arc = np.full(n, -1, dtype=np.int64)
    plain = np.full(n, -1, dtype=np.int64)
    twist = np.full(n, -1, dtype=np.int64)
    coord = np.full(n, -1, dtype=np.int64)

    def link(m: np.ndarray, a: int, b: int) -> None:
        if m[a] != -1 or m[b] != -1 or a == b:
            raise ConsistencyError(f"slot used twice while linking {a} and {b}")
        m[a], m[b] = b, a

    vmap = t.vertex_map(g)
    for v in range(g.n_vertices):
        if vmap[v] != v:
            continue
        halves = [h for h in g.rotation[v] if h in pos]
        if g.valency(v) == 3 and len(halves) == 3:
            for i, h in enumerate(halves):
                nxt = halves[(i + 1) % 3]
                link(arc, 2 * pos[h] + 1, 2 * pos[nxt])
        elif len(halves) == 1:
            h = halves[0]
            link(arc, 2 * pos[h], 2 * pos[h] + 1)
        else:
            raise ConsistencyError(f"fixed vertex {g.vertex_ids[v]} has {len(halves)} fixed half-edges")

    basis = direction_basis(g, t)
    label_of_edge = {}
    for i, fiber in enumerate(basis.fibers):
        if len(fiber) == 1:
            label_of_edge[fiber[0]] = i
    for e, (a, b) in enumerate(g.edge_halves):
        if a not in pos:
            continue
        if b not in pos:
            raise ConsistencyError(f"edge {g.edge_ids[e]} is only half fixed")
        ja, jb = pos[a], pos[b]
        for s in (0, 1):
            link(plain, 2 * ja + s, 2 * jb + 1 - s)
            link(twist, 2 * ja + s, 2 * jb + s)
        c = label_of_edge.get(e, -1)
        coord[2 * ja:2 * ja + 2] = c
        coord[2 * jb:2 * jb + 2] = c

    for name, m in (("arc", arc), ("connector", plain), ("twisted connector", twist)):
        if (m < 0).any():
            raise ConsistencyError(f"{name} matching leaves a slot of degree != 2")
    for m in (arc, plain, twist, coord):
        m.setflags(write=False)
    return SlotMatching(fixed, arc, plain, twist, coord)


@dataclass(frozen=True)
class RealPartReport:
    genus: int
    count: int
    components: tuple[tuple[tuple[str, int], ...], ...] = field(default=(), compare=False)

    @property
    def maximal(self) -> bool:
        return self.count == self.genus + 1

    @property
    def nonempty(self) -> bool:
        return self.count > 0

    @property
    def quotient_euler_characteristic(self) -> int:
        # chi(S/tau) = (chi(S) + chi(RS)) / 2 and circles have chi = 0.
        return 1 - self.genus

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "count": self.count,
            "maximal": self.maximal,
            "nonempty": self.nonempty,
            "components": [[list(s) for s in comp] for comp in self.components],
        }


def _check_twist(g: HalfEdgeGraph, t: GraphInvolution, twist: TwistVector) -> None:
    labels = direction_basis(g, t).labels
    if twist.labels != labels:
        raise UnknownLabel(f"twist vector over {list(twist.labels)}, expected {list(labels)}")


def trace_real_part(g: HalfEdgeGraph, t: GraphInvolution, twist: TwistVector | None = None) -> RealPartReport:
    validate(g, t)
    if twist is None:
        twist = direction_basis(g, t).zero()
    _check_twist(g, t, twist)
    sm = slot_matching(g, t)
    seen = np.zeros(sm.n_slots, dtype=bool)
    comps = []
    for s0 in range(sm.n_slots):
        if seen[s0]:
            continue
        comp = []
        s = s0
        while True:
            a = int(sm.arc_mate[s])
            seen[s] = seen[a] = True
            comp += [s, a]
            c = sm.coord[a]
            s = int(sm.twist_mate[a] if c >= 0 and (twist.bits >> c) & 1 else sm.plain_mate[a])
            if s == s0:
                break
        comps.append(tuple(sm.slot_name(g, x) for x in comp))
    return RealPartReport(genus(g), len(comps), tuple(comps))


def trace_counts(g: HalfEdgeGraph, t: GraphInvolution, masks, jobs: int = 1) -> np.ndarray:
    """Component counts for many twist masks at once (serial and parallel agree)."""
    sm = slot_matching(g, t)
    masks = np.asarray(masks, dtype=np.int64)
    args = (sm.arc_mate, sm.plain_mate, sm.twist_mate, sm.coord)
    if jobs <= 1 or masks.size < 2 * jobs:
        return _kernels.cycle_counts(*args, masks)
    chunks = np.array_split(masks, jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(lambda m: _kernels.cycle_counts(*args, m), chunks))
    return np.concatenate(parts)


def ribbon_boundary_count(g: HalfEdgeGraph, rotation=None, signs=None) -> int:
    """Boundary components of the ribbon surface with half-twisted ``signs`` edges.

    Standard face tracing on states ``(half-edge, orientation)``: cross the
    edge (flipping orientation on a signed edge), then turn to the rotation
    successor (or predecessor when flipped).  Every boundary component is
    traced once in each direction.  Leaves cap their edge.
    """
    if rotation is None:
        rotation = g.rotation_given
    if rotation is None:
        raise MissingRotation("ribbon boundary count needs a rotation at every vertex")
    gr = g.with_rotation(rotation)
    if signs is None:
        signed = frozenset()
    elif isinstance(signs, Gf2Vector):
        signed = frozenset(g.edge_index(lab) for lab in signs.support())
    else:
        signed = frozenset(g.edge_index(lab) for lab in signs)
    succ, pred, mate, owner = gr.successor, gr.predecessor, gr.mate, gr.half_edge
    seen = set()
    orbits = 0
    for h0 in range(g.n_halves):
        for o0 in (1, -1):
            if (h0, o0) in seen:
                continue
            orbits += 1
            h, o = h0, o0
            while (h, o) not in seen:
                seen.add((h, o))
                far = mate[h]
                if owner[h] in signed:
                    o = -o
                h = succ[far] if o == 1 else pred[far]
    return orbits // 2


def is_maximal(g: HalfEdgeGraph, t: GraphInvolution, twist: TwistVector | None = None) -> bool:
    return trace_real_part(g, t, twist).maximal


@dataclass(frozen=True)
class MaximalCoset:
    w: Gf2Subspace
    maximal: tuple[TwistVector, ...]
    counts: tuple[int, ...]

    @property
    def representative(self) -> TwistVector | None:
        return self.maximal[0] if self.maximal else None

    @property
    def empty(self) -> bool:
        return not self.maximal


def maximal_coset(g: HalfEdgeGraph, t: GraphInvolution, cap: int = DEFAULT_CAP, jobs: int = 1) -> MaximalCoset:
    """Enumerate all lifts; the maximal ones must form one W-coset or none."""
    validate(g, t)
    basis = direction_basis(g, t)
    if basis.k > cap:
        raise CapExceeded(f"direction space has dimension {basis.k} > cap {cap}", basis.k)
    counts = trace_counts(g, t, np.arange(1 << basis.k, dtype=np.int64), jobs=jobs)
    gen = genus(g)
    if (counts > gen + 1).any():
        bad = int(np.flatnonzero(counts > gen + 1)[0])
        raise CosetViolation(f"lift {basis.from_mask(bad).support()} has {counts[bad]} > g+1 components")
    w = w_kernel(g, t)
    maximal_masks = [int(m) for m in np.flatnonzero(counts == gen + 1)]
    if maximal_masks:
        residues = {w.reduce(m) for m in maximal_masks}
        if len(residues) != 1 or len(maximal_masks) != 1 << w.dim:
            raise CosetViolation(
                f"{len(maximal_masks)} maximal lifts in {len(residues)} classes; expected one coset of size {1 << w.dim}"
            )
    return MaximalCoset(w, tuple(basis.from_mask(m) for m in maximal_masks), tuple(int(c) for c in counts))


def type_classification(g: HalfEdgeGraph, rotation=None, signs=None) -> str:
    """``"I"`` iff every fundamental cycle carries an even number of signed edges (tau = Id)."""
    from .wspace import _cycles

    if rotation is None and g.rotation_given is None:
        raise MissingRotation("type classification needs a rotation system")
    if g.n_vertices == 0:
        raise EmptyRealPart("empty graph has empty real part")
    if signs is None:
        signed = set()
    elif isinstance(signs, Gf2Vector):
        signed = {g.edge_index(lab) for lab in signs.support()}
    else:
        signed = {g.edge_index(lab) for lab in signs}
    cb = _cycles(g)
    for cyc in cb.cycles:
        if len(cyc & signed) % 2:
            return "II"
    return "I"
