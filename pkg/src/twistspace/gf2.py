"""Exact linear algebra over Z/2Z.

Vectors are Python-int bitsets tagged with their ordered coordinate labels
(bit ``i`` is coordinate ``labels[i]``), so mixing up, say, edges of a graph
and edges of its quotient fails loudly instead of silently.  Subspaces are
kept in reduced row echelon form, which makes equality syntactic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DimensionMismatch

Labels = tuple[str, ...]


def _check_labels(a: Labels, b: Labels) -> None:
    if a != b:
        raise DimensionMismatch(f"label mismatch: {list(a)} vs {list(b)}")


@dataclass(frozen=True)
class Gf2Vector:
    labels: Labels
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> len(self.labels):
            raise DimensionMismatch(f"bits {self.bits:b} exceed dimension {len(self.labels)}")

    @classmethod
    def zero(cls, labels: Sequence[str]) -> Gf2Vector:
        return cls(tuple(labels), 0)

    @classmethod
    def from_support(cls, labels: Sequence[str], support: Iterable[str]) -> Gf2Vector:
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        bits = 0
        for lab in support:
            if lab not in index:
                raise DimensionMismatch(f"unknown coordinate {lab!r}", offender=lab)
            bits ^= 1 << index[lab]
        return cls(labels, bits)

    @classmethod
    def from_bits(cls, labels: Sequence[str], values: Sequence[int]) -> Gf2Vector:
        labels = tuple(labels)
        if len(values) != len(labels):
            raise DimensionMismatch(f"expected {len(labels)} coordinates, got {len(values)}")
        return cls(labels, sum((int(v) & 1) << i for i, v in enumerate(values)))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __add__(self, other: Gf2Vector) -> Gf2Vector:
        _check_labels(self.labels, other.labels)
        return Gf2Vector(self.labels, self.bits ^ other.bits)

    __sub__ = __add__

    def __getitem__(self, label: str) -> int:
        return (self.bits >> self.labels.index(label)) & 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def dot(self, other: Gf2Vector) -> int:
        _check_labels(self.labels, other.labels)
        return (self.bits & other.bits).bit_count() & 1

    def support(self) -> list[str]:
        return [lab for i, lab in enumerate(self.labels) if (self.bits >> i) & 1]

    def as_array(self) -> np.ndarray:
        return np.array([(self.bits >> i) & 1 for i in range(self.dim)], dtype=np.uint8)

    def __repr__(self) -> str:
        return f"Gf2Vector({self.support()})"


def _to_matrix(rows: Sequence[int], n: int) -> np.ndarray:
    m = np.zeros((len(rows), n), dtype=np.uint8)
    for r, bits in enumerate(rows):
        for c in range(n):
            m[r, c] = (bits >> c) & 1
    return m


def _from_matrix(m: np.ndarray) -> list[int]:
    weights = [1 << c for c in range(m.shape[1])]
    return [sum(w for w, b in zip(weights, row) if b) for row in m.tolist()]


def _reduce_rows(rows: Sequence[int], n: int) -> tuple[int, ...]:
    if not rows:
        return ()
    m, rank = _kernels.rref(_to_matrix(rows, n))
    return tuple(_from_matrix(m[:rank]))


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class Gf2Subspace:
    """Subspace given by its reduced row echelon basis (pivot = lowest set bit)."""

    labels: Labels
    rows: tuple[int, ...] = ()

    @classmethod
    def span(cls, labels: Sequence[str], vectors: Iterable[Gf2Vector | int]) -> Gf2Subspace:
        labels = tuple(labels)
        raw = []
        for v in vectors:
            if isinstance(v, Gf2Vector):
                _check_labels(labels, v.labels)
                v = v.bits
            raw.append(int(v))
        return cls(labels, _reduce_rows(raw, len(labels)))

    @classmethod
    def full(cls, labels: Sequence[str]) -> Gf2Subspace:
        labels = tuple(labels)
        return cls(labels, tuple(1 << i for i in range(len(labels))))

    @property
    def ambient_dim(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list[Gf2Vector]:
        return [Gf2Vector(self.labels, r) for r in self.rows]

    def reduce(self, bits: int) -> int:
        """Remainder of ``bits`` modulo the subspace (zero iff it is a member)."""
        for r in self.rows:
            if (bits >> _lowest_bit(r)) & 1:
                bits ^= r
        return bits

    def elements(self) -> list[Gf2Vector]:
        out = []
        for coeffs in product((0, 1), repeat=self.dim):
            bits = 0
            for c, r in zip(coeffs, self.rows):
                if c:
                    bits ^= r
            out.append(Gf2Vector(self.labels, bits))
        return out

    def __contains__(self, v: Gf2Vector) -> bool:
        return in_span(self, v)

    def __repr__(self) -> str:
        return f"Gf2Subspace(dim={self.dim}, basis={[v.support() for v in self.basis()]})"


def rank(rows: Sequence[Gf2Vector]) -> int:
    if not rows:
        return 0
    labels = rows[0].labels
    return Gf2Subspace.span(labels, rows).dim


def kernel_basis(rows: Sequence[Gf2Vector], labels: Sequence[str] | None = None) -> Gf2Subspace:
    """Null space ``{x : <row, x> = 0 for every row}``.

    ``labels`` is required when ``rows`` is empty (it fixes the ambient space).
    """
    if labels is None:
        if not rows:
            raise DimensionMismatch("kernel_basis of an empty system needs explicit labels")
        labels = rows[0].labels
    labels = tuple(labels)
    for r in rows:
        if r.labels != labels:
            raise DimensionMismatch(f"row over {list(r.labels)} in system over {list(labels)}")
    n = len(labels)
    reduced = _reduce_rows([r.bits for r in rows], n)
    pivot_row = {_lowest_bit(r): r for r in reduced}
    free = [c for c in range(n) if c not in pivot_row]
    basis = []
    for f in free:
        x = 1 << f
        for p, r in pivot_row.items():
            if (r >> f) & 1:
                x |= 1 << p
        basis.append(x)
    return Gf2Subspace(labels, _reduce_rows(basis, n))


def in_span(s: Gf2Subspace, v: Gf2Vector) -> bool:
    _check_labels(s.labels, v.labels)
    return s.reduce(v.bits) == 0


def subspace_equal(a: Gf2Subspace, b: Gf2Subspace) -> bool:
    _check_labels(a.labels, b.labels)
    return a.rows == b.rows


def coset_partition(vectors: Sequence[Gf2Vector], w: Gf2Subspace) -> list[list[Gf2Vector]]:
    """Group ``vectors`` by their class modulo ``w``.

    Classes are ordered by first appearance, members keep input order.
    """
    classes: dict[int, list[Gf2Vector]] = {}
    for v in vectors:
        _check_labels(w.labels, v.labels)
        classes.setdefault(w.reduce(v.bits), []).append(v)
    return list(classes.values())


def all_vectors(labels: Sequence[str]) -> list[Gf2Vector]:
    labels = tuple(labels)
    return [Gf2Vector(labels, b) for b in range(1 << len(labels))]
