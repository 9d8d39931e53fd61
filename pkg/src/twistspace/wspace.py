"""Direction space of real structures over ``(Gamma, tau)`` and the subspace W.

A lift of ``tau`` is encoded relative to a reference lift by one bit per
quotient edge with no 1-valent endpoint (a half Dehn twist on that cylinder,
or on the swapped pair of cylinders).  W is computed twice: as the common
kernel of the bilinear map ``mu`` on a cycle basis, and from bridges and
disconnecting pairs.  The two must agree.

Homology of the surface is never built explicitly.  The difference of two
induced actions is recorded in the g-dimensional coordinates
``gamma_{e_1}, ..., gamma_{e_g}`` of H_{1,0} (one per non-tree edge) via
``gamma_f = sum_j [f in alpha_j] gamma_{e_j}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import NotACycle, TheoremViolation, UnknownLabel
from .gf2 import Gf2Subspace, Gf2Vector, in_span, kernel_basis
from .graph import (
    CycleBasis,
    GraphInvolution,
    HalfEdgeGraph,
    QuotientGraph,
    cycle_basis,
    disconnecting_pairs,
    is_cycle,
    quotient,
    quotient_bridges,
    validate,
)

TwistVector = Gf2Vector


@dataclass(frozen=True)
class DirectionBasis:
    """Ordered Edge^0(Gamma/tau) with the Gamma-edges lying over each label."""

    labels: tuple[str, ...]
    quotient_edges: tuple[int, ...]
    fibers: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.labels)

    def is_swapped(self, i: int) -> bool:
        return len(self.fibers[i]) == 2

    def twist(self, support: Iterable[str] = ()) -> TwistVector:
        support = list(support)
        for lab in support:
            if lab not in self.labels:
                raise UnknownLabel(f"{lab!r} is not in the direction basis {list(self.labels)}", lab)
        return Gf2Vector.from_support(self.labels, support)

    def zero(self) -> TwistVector:
        return Gf2Vector.zero(self.labels)

    def from_mask(self, mask: int) -> TwistVector:
        return Gf2Vector(self.labels, mask)


@lru_cache(maxsize=512)
def _quotient(g: HalfEdgeGraph, t: GraphInvolution) -> QuotientGraph:
    return quotient(g, t)


@lru_cache(maxsize=512)
def _cycles(g: HalfEdgeGraph) -> CycleBasis:
    return cycle_basis(g)


@lru_cache(maxsize=512)
def direction_basis(g: HalfEdgeGraph, t: GraphInvolution) -> DirectionBasis:
    validate(g, t)
    q = _quotient(g, t)
    return DirectionBasis(
        labels=q.edge0_labels,
        quotient_edges=q.edge0,
        fibers=tuple(q.fibers[e] for e in q.edge0),
    )


def _edge_set(g: HalfEdgeGraph, edges: Iterable) -> frozenset[int]:
    out = set()
    for e in edges:
        out.add(g.edge_index(e) if isinstance(e, str) else int(e))
    return frozenset(out)


def mu(g: HalfEdgeGraph, t: GraphInvolution, a: Iterable, b: Iterable) -> TwistVector:
    """``mu(a, b)``: per direction label, parity of its fiber inside ``a & b``.

    ``a`` and ``b`` are edge sets (indices or labels) that must be Z/2 cycles.
    """
    a, b = _edge_set(g, a), _edge_set(g, b)
    for name, c in (("first", a), ("second", b)):
        if not is_cycle(g, c):
            raise NotACycle(f"{name} argument is not a cycle")
    basis = direction_basis(g, t)
    common = a & b
    bits = 0
    for i, fiber in enumerate(basis.fibers):
        if sum(1 for e in fiber if e in common) & 1:
            bits |= 1 << i
    return Gf2Vector(basis.labels, bits)


def mu_rows(g: HalfEdgeGraph, t: GraphInvolution) -> list[TwistVector]:
    """``mu(alpha_i, alpha_j)`` for ``i <= j`` over the fundamental cycles."""
    cb = _cycles(g)
    return [mu(g, t, cb.cycles[i], cb.cycles[j]) for i in range(cb.genus) for j in range(i, cb.genus)]


@lru_cache(maxsize=512)
def w_kernel(g: HalfEdgeGraph, t: GraphInvolution) -> Gf2Subspace:
    basis = direction_basis(g, t)
    return kernel_basis(mu_rows(g, t), basis.labels)


@lru_cache(maxsize=512)
def w_structural(g: HalfEdgeGraph, t: GraphInvolution) -> Gf2Subspace:
    q = _quotient(g, t)
    basis = direction_basis(g, t)
    pos = {qe: i for i, qe in enumerate(basis.quotient_edges)}
    gens = [1 << pos[qe] for qe in sorted(quotient_bridges(g, t, q))]
    for pair in sorted(disconnecting_pairs(g, t, q), key=sorted):
        bits = 0
        for qe in pair:
            bits ^= 1 << pos[qe]
        gens.append(bits)
    return Gf2Subspace.span(basis.labels, gens)


def _outer(u: int, n: int) -> np.ndarray:
    vec = np.array([(u >> i) & 1 for i in range(n)], dtype=np.uint8)
    return np.outer(vec, vec).astype(np.uint8)


@lru_cache(maxsize=512)
def _generators(g: HalfEdgeGraph, t: GraphInvolution) -> np.ndarray:
    basis = direction_basis(g, t)
    cb = _cycles(g)
    n = cb.genus
    gens = np.zeros((basis.k, n * n), dtype=np.uint8)
    for i, fiber in enumerate(basis.fibers):
        acc = np.zeros((n, n), dtype=np.uint8)
        for e in fiber:
            acc ^= _outer(cb.u[e], n)
        gens[i] = acc.ravel()
    gens.setflags(write=False)
    return gens


def action_generators(g: HalfEdgeGraph, t: GraphInvolution) -> np.ndarray:
    """Row ``i`` is the flattened relative action of the unit twist on label ``i``."""
    return _generators(g, t)


def relative_action(g: HalfEdgeGraph, t: GraphInvolution, twist: TwistVector) -> np.ndarray:
    """Matrix of the difference of induced actions on the ``gamma_alpha`` classes.

    Equals ``sum u_e u_e^T`` over every Gamma-edge lying over a set coordinate
    of ``twist``; symmetric by construction.
    """
    basis = direction_basis(g, t)
    if twist.labels != basis.labels:
        raise UnknownLabel(f"twist vector over {list(twist.labels)}, expected {list(basis.labels)}")
    n = _cycles(g).genus
    gens = _generators(g, t)
    acc = np.zeros(n * n, dtype=np.uint8)
    for i in range(basis.k):
        if (twist.bits >> i) & 1:
            acc ^= gens[i]
    return acc.reshape(n, n)


def action_is_trivial(g: HalfEdgeGraph, t: GraphInvolution, masks: Sequence[int]) -> np.ndarray:
    """Batched ``relative_action(mask) == 0`` for integer twist masks."""
    return _kernels.action_zero(_generators(g, t), np.asarray(masks, dtype=np.int64))


def same_action(g: HalfEdgeGraph, t: GraphInvolution, t1: TwistVector, t2: TwistVector) -> bool:
    diff = t1 + t2
    trivial = not relative_action(g, t, diff).any()
    if trivial != in_span(w_kernel(g, t), diff):
        raise TheoremViolation(f"relative action and W disagree on {diff.support()}")
    return trivial


def h10_dimension(g: HalfEdgeGraph) -> int:
    """Rank of the edge incidence vectors ``u_f``; equals the genus."""
    cb = _cycles(g)
    return Gf2Subspace.span([str(i) for i in range(cb.genus)], list(cb.u)).dim
