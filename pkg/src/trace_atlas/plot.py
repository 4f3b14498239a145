"""Static SVG rendering of the curves, with an optional overlay of points."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Sequence

WIDTH, HEIGHT = 800, 600
LEFT, RIGHT, TOP, BOTTOM = 70, 30, 40, 60
Y_MIN, Y_MAX = 0.9, 2.1
FONT = "12pt"

STYLES = {
    "L": ("#1f77b4", "L(c)"),
    "ell": ("#d62728", "ℓ(c)"),
}


def _px(c: float, y: float) -> tuple[float, float]:
    x = LEFT + c * (WIDTH - LEFT - RIGHT)
    yy = TOP + (Y_MAX - y) / (Y_MAX - Y_MIN) * (HEIGHT - TOP - BOTTOM)
    return round(x, 3), round(yy, 3)


def _text(parent: ET.Element, x: float, y: float, s: str, anchor: str = "middle") -> None:
    el = ET.SubElement(parent, "text", x=str(x), y=str(y), attrib={"font-size": FONT, "text-anchor": anchor})
    el.text = s


def render_svg(
    curves: dict[str, Sequence[tuple[float, float]]],
    points: Sequence[tuple[float, float]] = (),
    title: str = "",
) -> str:
    """SVG document with the given sampled curves, the line y = 1 and a legend."""
    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(WIDTH),
        height=str(HEIGHT),
        viewBox=f"0 0 {WIDTH} {HEIGHT}",
    )
    ET.SubElement(svg, "rect", x="0", y="0", width=str(WIDTH), height=str(HEIGHT), fill="white")
    if title:
        _text(svg, WIDTH / 2, TOP - 15, title)

    x0, y0 = _px(0, Y_MIN)
    x1, y1 = _px(1, Y_MAX)
    axes = ET.SubElement(svg, "g", id="axes", stroke="black", attrib={"stroke-width": "1"})
    ET.SubElement(axes, "line", x1=str(x0), y1=str(y0), x2=str(x1), y2=str(y0))
    ET.SubElement(axes, "line", x1=str(x0), y1=str(y0), x2=str(x0), y2=str(y1))
    for c in (0.0, 0.25, 0.5, 0.75, 1.0):
        px, _ = _px(c, Y_MIN)
        ET.SubElement(axes, "line", x1=str(px), y1=str(y0), x2=str(px), y2=str(y0 + 5))
        _text(svg, px, y0 + 20, f"{c:g}")
    for y in (1.0, 1.25, 1.5, 1.75, 2.0):
        _, py = _px(0, y)
        ET.SubElement(axes, "line", x1=str(x0 - 5), y1=str(py), x2=str(x0), y2=str(py))
        _text(svg, x0 - 8, py + 4, f"{y:g}", anchor="end")
    _text(svg, (x0 + x1) / 2, HEIGHT - 15, "c = d/n")

    bx0, by = _px(0, 1.0)
    bx1, _ = _px(1, 1.0)
    ET.SubElement(
        svg, "line", id="baseline", x1=str(bx0), y1=str(by), x2=str(bx1), y2=str(by),
        stroke="gray", attrib={"stroke-dasharray": "6 4", "stroke-width": "1.5"},
    )

    for kind, samples in curves.items():
        color, _ = STYLES[kind]
        pts = " ".join("%s,%s" % _px(c, y) for c, y in samples)
        ET.SubElement(
            svg, "polyline", id=f"curve-{kind}", points=pts, fill="none", stroke=color,
            attrib={"stroke-width": "2"},
        )

    if points:
        grp = ET.SubElement(svg, "g", id="points", fill="black")
        for c, y in points:
            if Y_MIN <= y <= Y_MAX:
                px, py = _px(c, y)
                ET.SubElement(grp, "circle", cx=str(px), cy=str(py), r="1.5")

    legend = ET.SubElement(svg, "g", id="legend")
    entries = [(STYLES[k][0], STYLES[k][1], None) for k in curves]
    entries.append(("gray", "y = 1", "6 4"))
    lx, ly = WIDTH - RIGHT - 150, TOP + 20
    for i, (color, label, dash) in enumerate(entries):
        yy = ly + 22 * i
        attrib = {"stroke-width": "2"}
        if dash:
            attrib["stroke-dasharray"] = dash
        ET.SubElement(legend, "line", x1=str(lx), y1=str(yy), x2=str(lx + 30), y2=str(yy), stroke=color, attrib=attrib)
        _text(legend, lx + 38, yy + 5, label, anchor="start")

    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"
