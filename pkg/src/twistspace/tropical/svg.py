"""SVG rendering: the tropical curve on the left, the patchworked curve on the right.

The right pane shows the triangulation reflected into the four quadrants with
the sign-rule segments of the patchworked curve.  Geometry is exact up to this
point; floats only appear here.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Iterable

from .curve import TropicalCurve
from .patchwork import _QUADRANTS, _mono, twist_indices, twists_to_signs

PANE = 400.0
MARGIN = 20.0
SVG_NS = "http://www.w3.org/2000/svg"


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _line(parent, p, q, **attrs) -> None:
    ET.SubElement(parent, "line", x1=_fmt(p[0]), y1=_fmt(p[1]), x2=_fmt(q[0]), y2=_fmt(q[1]), **attrs)


def _fit(points, box: tuple[float, float, float, float]):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    bx, by, bw, bh = box
    scale = min(bw, bh) / span

    def to_px(p):
        # SVG y grows downwards.
        return bx + (p[0] - x0) * scale, by + bh - (p[1] - y0) * scale

    return to_px


def _curve_pane(root, c: TropicalCurve, tset: frozenset[int]) -> None:
    g = ET.SubElement(root, "g", id="tropical-curve")
    verts = [(float(x), float(y)) for x, y in c.vertices]
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    reach = max(max(xs) - min(xs), max(ys) - min(ys), 1.0) * 0.35 + 1.0
    ray_ends = []
    for r in c.rays:
        v = verts[r.ends[0]]
        d = r.direction
        n = (d[0] ** 2 + d[1] ** 2) ** 0.5
        ray_ends.append((v[0] + reach * d[0] / n, v[1] + reach * d[1] / n))
    to_px = _fit(verts + ray_ends, (MARGIN, MARGIN, PANE - 2 * MARGIN, PANE - 2 * MARGIN))
    for r, end in zip(c.rays, ray_ends):
        _line(g, to_px(verts[r.ends[0]]), to_px(end), stroke="black", **{"stroke-width": "1"})
    for i, e in enumerate(c.edges):
        p, q = to_px(verts[e.ends[0]]), to_px(verts[e.ends[1]])
        if i in tset:
            _line(g, p, q, stroke="red", **{"stroke-width": "3", "stroke-dasharray": "6,3", "class": "twisted"})
        else:
            _line(g, p, q, stroke="black", **{"stroke-width": "1.5"})
        mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
        ET.SubElement(g, "text", x=_fmt(mid[0] + 3), y=_fmt(mid[1] - 3), **{"font-size": "9"}).text = e.id
    for v in verts:
        x, y = to_px(v)
        ET.SubElement(g, "circle", cx=_fmt(x), cy=_fmt(y), r="2", fill="black")


def _patchwork_pane(root, c: TropicalCurve, nu) -> None:
    g = ET.SubElement(root, "g", id="patchwork", transform=f"translate({_fmt(PANE)},0)")
    pts = [(q[0] * p[0], q[1] * p[1]) for q in _QUADRANTS for p in c.poly.support]
    to_px = _fit([(float(x), float(y)) for x, y in pts], (MARGIN, MARGIN, PANE - 2 * MARGIN, PANE - 2 * MARGIN))
    o = to_px((0.0, 0.0))
    _line(g, (MARGIN, o[1]), (PANE - MARGIN, o[1]), stroke="#999", **{"stroke-width": "0.5"})
    _line(g, (o[0], MARGIN), (o[0], PANE - MARGIN), stroke="#999", **{"stroke-width": "0.5"})
    for q in _QUADRANTS:
        quad = ET.SubElement(g, "g", **{"class": f"quadrant {'+' if q[0] > 0 else '-'}{'+' if q[1] > 0 else '-'}"})

        def place(p, q=q):
            return to_px((float(q[0] * p[0]), float(q[1] * p[1])))

        for tri in c.triangles:
            for i in range(3):
                _line(quad, place(tri[i]), place(tri[(i + 1) % 3]), stroke="#ccc", **{"stroke-width": "0.5"})
            sg = {p: nu[p] * _mono(q, p) for p in tri}
            mids = []
            for i in range(3):
                a, b = tri[i], tri[(i + 1) % 3]
                if sg[a] != sg[b]:
                    pa, pb = place(a), place(b)
                    mids.append(((pa[0] + pb[0]) / 2, (pa[1] + pb[1]) / 2))
            if mids:
                _line(quad, mids[0], mids[1], stroke="blue", **{"stroke-width": "2", "class": "arc"})
        for p in c.poly.support:
            x, y = place(p)
            ET.SubElement(quad, "circle", cx=_fmt(x), cy=_fmt(y), r="1.8", fill="white" if nu[p] * _mono(q, p) > 0 else "black", stroke="black", **{"stroke-width": "0.5"})


def render_svg(c: TropicalCurve, twists: Iterable = ()) -> str:
    tset = twist_indices(c, twists)
    nu = twists_to_signs(c, tset)
    root = ET.Element(
        "svg",
        xmlns=SVG_NS,
        width=_fmt(2 * PANE),
        height=_fmt(PANE),
        viewBox=f"0 0 {_fmt(2 * PANE)} {_fmt(PANE)}",
    )
    ET.SubElement(root, "title").text = f"patchworking of {c.poly}"
    _curve_pane(root, c, tset)
    _patchwork_pane(root, c, nu)
    return ET.tostring(root, encoding="unicode")


def write_svg(path, c: TropicalCurve, twists: Iterable = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write('<?xml version="1.0" encoding="UTF-8"?>\n')
        fh.write(render_svg(c, twists))
        fh.write("\n")
