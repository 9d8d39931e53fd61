"""Hot inner loops, compiled with numba when available.

Every kernel exists twice: an ``@njit`` version and a pure-numpy version
with identical results. Set ``TWISTSPACE_DISABLE_NUMBA=1`` to force the
numpy path (also used automatically when numba cannot be imported).
``benchmarks/bench_kernels.py`` times the two against each other.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("TWISTSPACE_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by TWISTSPACE_DISABLE_NUMBA")
    from numba import njit
except ImportError:
    njit = None


# ---------------------------------------------------------------------------
# GF(2) reduced row echelon form
# ---------------------------------------------------------------------------

def numpy_rref(mat: np.ndarray) -> tuple[np.ndarray, int]:
    """Reduced row echelon form of a 0/1 matrix; pivots are leftmost set columns.

    Returns ``(reduced, rank)``; the first ``rank`` rows of ``reduced`` are the
    basis, the remaining rows are zero.
    """
    m = np.array(mat, dtype=np.uint8, copy=True) & 1
    n_rows, n_cols = m.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        candidates = np.flatnonzero(m[rank:, col]) + rank
        if candidates.size == 0:
            continue
        piv = candidates[0]
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        hit = np.flatnonzero(m[:, col])
        hit = hit[hit != rank]
        if hit.size:
            m[hit] ^= m[rank]
        rank += 1
    return m, rank


def _rref_loop(mat):
    m = mat.copy()
    n_rows, n_cols = m.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        piv = -1
        for r in range(rank, n_rows):
            if m[r, col] & 1:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(n_cols):
                tmp = m[rank, c]
                m[rank, c] = m[piv, c]
                m[piv, c] = tmp
        for r in range(n_rows):
            if r != rank and (m[r, col] & 1):
                for c in range(col, n_cols):
                    m[r, c] ^= m[rank, c]
        rank += 1
    return m, rank


# ---------------------------------------------------------------------------
# Cycle counting in a slot matching, batched over twist masks
# ---------------------------------------------------------------------------
#
# Slots carry two perfect matchings: fixed vertex arcs (``arc_mate``) and edge
# connectors.  A connector is ``twist_mate[s]`` when bit ``coord[s]`` of the
# mask is set, else ``plain_mate[s]``; ``coord[s] == -1`` never twists.
# The union of both matchings is a disjoint union of circles; we count them.

def numpy_cycle_counts(arc_mate, plain_mate, twist_mate, coord, masks, chunk: int = 4096) -> np.ndarray:
    """Count circles per mask by pointer doubling on ``connector o arc``.

    Every circle of the slot graph yields exactly two cycles of the
    permutation ``s -> connector(arc(s))`` (one per traversal direction).
    """
    arc_mate = np.asarray(arc_mate, dtype=np.int64)
    plain_mate = np.asarray(plain_mate, dtype=np.int64)
    twist_mate = np.asarray(twist_mate, dtype=np.int64)
    coord = np.asarray(coord, dtype=np.int64)
    masks = np.asarray(masks, dtype=np.int64)
    n_slots = arc_mate.size
    out = np.zeros(masks.size, dtype=np.int64)
    if n_slots == 0:
        return out
    steps = max(1, int(np.ceil(np.log2(n_slots))) + 1)
    ids = np.arange(n_slots, dtype=np.int64)
    safe_coord = np.where(coord < 0, 0, coord)
    for start in range(0, masks.size, chunk):
        mk = masks[start:start + chunk]
        bits = ((mk[:, None] >> safe_coord[None, :]) & 1).astype(bool) & (coord >= 0)[None, :]
        conn = np.where(bits, twist_mate[None, :], plain_mate[None, :])
        perm = np.take_along_axis(conn, np.broadcast_to(arc_mate, conn.shape), axis=1)
        label = np.broadcast_to(ids, perm.shape).copy()
        for _ in range(steps):
            label = np.minimum(label, np.take_along_axis(label, perm, axis=1))
            perm = np.take_along_axis(perm, perm, axis=1)
        out[start:start + chunk] = (label == ids[None, :]).sum(axis=1) // 2
    return out


def _cycle_counts_loop(arc_mate, plain_mate, twist_mate, coord, masks):
    n_slots = arc_mate.shape[0]
    out = np.zeros(masks.shape[0], dtype=np.int64)
    seen = np.zeros(n_slots, dtype=np.bool_)
    for i in range(masks.shape[0]):
        mask = masks[i]
        seen[:] = False
        count = 0
        for s0 in range(n_slots):
            if seen[s0]:
                continue
            count += 1
            s = s0
            while True:
                seen[s] = True
                t = arc_mate[s]
                seen[t] = True
                c = coord[t]
                if c >= 0 and (mask >> c) & 1:
                    s = twist_mate[t]
                else:
                    s = plain_mate[t]
                if s == s0:
                    break
        out[i] = count
    return out


# ---------------------------------------------------------------------------
# Zero test of a GF(2)-linear matrix-valued map, batched over masks
# ---------------------------------------------------------------------------
#
# ``generators[j]`` is the flattened 0/1 matrix attached to coordinate j;
# the map sends a mask to the XOR of the generators of its set bits.

def numpy_action_zero(generators, masks, chunk: int = 4096) -> np.ndarray:
    gens = np.asarray(generators, dtype=np.int64)
    masks = np.asarray(masks, dtype=np.int64)
    k = gens.shape[0]
    out = np.zeros(masks.size, dtype=bool)
    if k == 0 or gens.shape[1] == 0:
        out[:] = True
        return out
    shifts = np.arange(k, dtype=np.int64)
    for start in range(0, masks.size, chunk):
        mk = masks[start:start + chunk]
        bits = (mk[:, None] >> shifts[None, :]) & 1
        acc = (bits @ gens) & 1
        out[start:start + chunk] = ~acc.any(axis=1)
    return out


def _action_zero_loop(generators, masks):
    k = generators.shape[0]
    width = generators.shape[1]
    out = np.zeros(masks.shape[0], dtype=np.bool_)
    acc = np.zeros(width, dtype=np.uint8)
    for i in range(masks.shape[0]):
        acc[:] = 0
        mask = masks[i]
        for j in range(k):
            if (mask >> j) & 1:
                for c in range(width):
                    acc[c] ^= generators[j, c]
        zero = True
        for c in range(width):
            if acc[c]:
                zero = False
                break
        out[i] = zero
    return out


# ---------------------------------------------------------------------------
# Backend selection
# ---------------------------------------------------------------------------

if njit is not None:
    _rref_jit = njit(cache=True, nogil=True)(_rref_loop)
    _cycle_counts_jit = njit(cache=True, nogil=True)(_cycle_counts_loop)
    _action_zero_jit = njit(cache=True, nogil=True)(_action_zero_loop)

    def numba_rref(mat):
        return _rref_jit(np.ascontiguousarray(mat, dtype=np.uint8) & 1)

    def numba_cycle_counts(arc_mate, plain_mate, twist_mate, coord, masks):
        return _cycle_counts_jit(
            np.ascontiguousarray(arc_mate, dtype=np.int64),
            np.ascontiguousarray(plain_mate, dtype=np.int64),
            np.ascontiguousarray(twist_mate, dtype=np.int64),
            np.ascontiguousarray(coord, dtype=np.int64),
            np.ascontiguousarray(masks, dtype=np.int64),
        )

    def numba_action_zero(generators, masks):
        return _action_zero_jit(
            np.ascontiguousarray(generators, dtype=np.uint8),
            np.ascontiguousarray(masks, dtype=np.int64),
        )

    BACKEND = "numba"
    rref = numba_rref
    cycle_counts = numba_cycle_counts
    action_zero = numba_action_zero
else:
    numba_rref = numba_cycle_counts = numba_action_zero = None
    BACKEND = "numpy"
    rref = numpy_rref
    cycle_counts = numpy_cycle_counts
    action_zero = numpy_action_zero
