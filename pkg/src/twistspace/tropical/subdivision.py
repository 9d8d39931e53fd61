"""Regular subdivision of the Newton polygon induced by the lower hull of the lift.

Heights are scaled to integers so the hull test is pure integer arithmetic.
Supports are small (a degree-6 curve has 28 points), so the lower faces are
found by brute force: every non-collinear triple spans a plane, and that plane
is a lower face when no lifted point lies strictly below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import DegenerateSupport
from .poly import TropicalPoly

Point = tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> tuple[Point, ...]:
    """Counterclockwise hull vertices (monotone chain, collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def twice_area(polygon) -> int:
    n = len(polygon)
    return abs(sum(polygon[i][0] * polygon[(i + 1) % n][1] - polygon[(i + 1) % n][0] * polygon[i][1] for i in range(n)))


@dataclass(frozen=True)
class DualSubdivision:
    """Cells are counterclockwise tuples of hull vertices of each lower face.

    ``cell_points`` keeps every support point lying on the face (including
    non-vertices), which is what decides unimodularity.
    """

    poly: TropicalPoly
    polygon: tuple[Point, ...]
    cells: tuple[tuple[Point, ...], ...]
    cell_points: tuple[frozenset[Point], ...]

    @property
    def is_nonsingular(self) -> bool:
        return all(len(c) == 3 and len(pts) == 3 and twice_area(c) == 1 for c, pts in zip(self.cells, self.cell_points))

    @property
    def polygon_twice_area(self) -> int:
        return twice_area(self.polygon)

    def edges(self) -> dict[frozenset[Point], list[int]]:
        """Subdivision edge -> indices of the cells containing it (1 or 2)."""
        out: dict[frozenset[Point], list[int]] = {}
        for k, cell in enumerate(self.cells):
            for i in range(len(cell)):
                out.setdefault(frozenset((cell[i], cell[(i + 1) % len(cell)])), []).append(k)
        return out

    def interior_points(self) -> tuple[Point, ...]:
        """Support points used by the subdivision that are interior to the polygon."""
        used = {p for c in self.cells for p in c}
        hull = self.polygon
        n = len(hull)
        return tuple(sorted(p for p in used if all(_cross(hull[i], hull[(i + 1) % n], p) > 0 for i in range(n))))


def _integer_heights(p: TropicalPoly) -> dict[Point, int]:
    den = 1
    for _, b in p.coeffs:
        den = den * b.denominator // math.gcd(den, b.denominator)
    return {pt: int(b * den) for pt, b in p.coeffs}


def dual_subdivision(p: TropicalPoly) -> DualSubdivision:
    pts = list(p.support)
    if len(pts) < 3 or len(convex_hull(pts)) < 3:
        raise DegenerateSupport("support is collinear; no Newton polygon", pts)
    h = _integer_heights(p)
    faces: dict[frozenset[Point], None] = {}
    for a, b, c in combinations(pts, 3):
        ux, uy, uz = b[0] - a[0], b[1] - a[1], h[b] - h[a]
        vx, vy, vz = c[0] - a[0], c[1] - a[1], h[c] - h[a]
        nx, ny, nz = uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx
        if nz == 0:
            continue
        if nz < 0:
            nx, ny, nz = -nx, -ny, -nz
        on_plane = []
        for q in pts:
            s = nx * (q[0] - a[0]) + ny * (q[1] - a[1]) + nz * (h[q] - h[a])
            if s < 0:
                break
            if s == 0:
                on_plane.append(q)
        else:
            faces[frozenset(on_plane)] = None
    cells = []
    cell_points = []
    for face in faces:
        cells.append(convex_hull(face))
        cell_points.append(face)
    order = sorted(range(len(cells)), key=lambda k: sorted(cells[k]))
    return DualSubdivision(
        poly=p,
        polygon=convex_hull(pts),
        cells=tuple(cells[k] for k in order),
        cell_points=tuple(cell_points[k] for k in order),
    )


def plane_slopes(poly: TropicalPoly, triangle) -> tuple[Fraction, Fraction]:
    """Slopes ``(X, Y)`` of the plane through the lifted triangle.

    ``b_p - X*p_x - Y*p_y`` is the same constant on the triangle, which is the
    point of the plane where its three monomials tie.
    """
    (x0, y0), (x1, y1), (x2, y2) = triangle
    b = poly.as_dict()
    b0, b1, b2 = b[(x0, y0)], b[(x1, y1)], b[(x2, y2)]
    det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    X = Fraction((b1 - b0) * (y2 - y0) - (b2 - b0) * (y1 - y0)) / det
    Y = Fraction((x1 - x0) * (b2 - b0) - (x2 - x0) * (b1 - b0)) / det
    return X, Y
