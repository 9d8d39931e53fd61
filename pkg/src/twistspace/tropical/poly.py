"""Tropical polynomials ``"b_00 + b_10*x + b_01*y + ..."`` with exact coefficients.

Grammar (ASCII, whitespace allowed between tokens)::

    poly  := term ('+' term)*
    term  := coeff ('*' var)*
    var   := ('x' | 'y') ['^' uint]
    coeff := ['-'|'+'] (decimal | int '/' int)

A leading ``+`` sign must touch the number, so ``"0 + + 1"`` is rejected.
Coefficients are read with min-plus conventions: the monomial ``(i, j)`` with
coefficient ``b`` stands for ``t^(-b) z^i w^j`` in the dequantised family.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..errors import DuplicateMonomial, PolySyntaxError

_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?")
_UINT = re.compile(r"\d+")


@dataclass(frozen=True)
class TropicalPoly:
    coeffs: tuple[tuple[tuple[int, int], Fraction], ...]

    @classmethod
    def from_mapping(cls, coeffs: Mapping[tuple[int, int], Fraction | int | str]) -> TropicalPoly:
        items = sorted((tuple(map(int, k)), Fraction(v)) for k, v in coeffs.items())
        return cls(tuple(items))

    @property
    def support(self) -> tuple[tuple[int, int], ...]:
        return tuple(p for p, _ in self.coeffs)

    def coefficient(self, point: tuple[int, int]) -> Fraction:
        return dict(self.coeffs)[point]

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.coeffs)

    @property
    def degree(self) -> int:
        return max(i + j for i, j in self.support)

    def __str__(self) -> str:
        return format_poly(self)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise PolySyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def number(self) -> Fraction:
        self.skip()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            raise PolySyntaxError("expected a rational coefficient", self.pos)
        raw = m.group(0)
        self.pos = m.end()
        if "/" in raw:
            num, den = raw.split("/")
            if int(den) == 0:
                raise PolySyntaxError("zero denominator", m.start())
            if "." in num:
                raise PolySyntaxError("decimal numerator in p/q coefficient", m.start())
            return Fraction(int(num), int(den))
        return Fraction(raw)

    def variable(self) -> tuple[int, int]:
        ch = self.peek()
        if ch not in ("x", "y"):
            raise PolySyntaxError("expected variable 'x' or 'y'", self.pos)
        self.pos += 1
        exp = 1
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            m = _UINT.match(self.text, self.pos)
            if not m:
                raise PolySyntaxError("expected exponent", self.pos)
            exp = int(m.group(0))
            self.pos = m.end()
        return (exp, 0) if ch == "x" else (0, exp)


def parse_poly(text: str) -> TropicalPoly:
    sc = _Scanner(text)
    coeffs: dict[tuple[int, int], Fraction] = {}
    while True:
        start = sc.pos
        b = sc.number()
        i = j = 0
        while sc.peek() == "*":
            sc.pos += 1
            di, dj = sc.variable()
            i, j = i + di, j + dj
        if (i, j) in coeffs:
            raise DuplicateMonomial(f"monomial x^{i}*y^{j} appears twice (term at {start})", (i, j))
        coeffs[(i, j)] = b
        nxt = sc.peek()
        if nxt == "":
            break
        if nxt != "+":
            raise PolySyntaxError("expected '+' or end of input", sc.pos)
        sc.pos += 1
    return TropicalPoly.from_mapping(coeffs)


def _format_coeff(b: Fraction) -> str:
    return str(b.numerator) if b.denominator == 1 else f"{b.numerator}/{b.denominator}"


def _format_monomial(i: int, j: int) -> str:
    parts = []
    for var, e in (("x", i), ("y", j)):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "".join(f"*{p}" for p in parts)


def format_poly(p: TropicalPoly) -> str:
    """Canonical text; ``parse_poly(format_poly(p)) == p``."""
    ordered = sorted(p.coeffs, key=lambda item: (item[0][0] + item[0][1], -item[0][0], item[0][1]))
    return " + ".join(_format_coeff(b) + _format_monomial(i, j) for (i, j), b in ordered)


def quadratic_lift(degree: int) -> TropicalPoly:
    """Degree-``d`` polynomial with ``b_ij = i^2 + i*j + j^2``.

    The lift is strictly convex and its lower hull is the hexagonal-lattice
    Delaunay triangulation, so the curve is non-singular for every degree
    (a honeycomb curve).
    """
    return TropicalPoly.from_mapping(
        {(i, j): i * i + i * j + j * j for i in range(degree + 1) for j in range(degree + 1 - i)}
    )
