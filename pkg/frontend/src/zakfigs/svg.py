"""Minimal deterministic SVG writer.

Coordinates are emitted at fixed precision and elements in insertion order,
so identical inputs give identical bytes.  Axes groups carry their data
ranges and pixel box as data-* attributes, which makes every plotted series
machine-readable straight from the rendered file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


def px(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


@dataclass
class Canvas:
    width: int = 640
    height: int = 480
    elements: list[str] = field(default_factory=list)

    def add(self, tag: str) -> None:
        self.elements.append(tag)

    def rect(self, x, y, w, h, fill, stroke="none", extra="") -> None:
        self.add(
            f'<rect x="{px(x)}" y="{px(y)}" width="{px(w)}" height="{px(h)}" '
            f'fill="{fill}" stroke="{stroke}"{extra}/>'
        )

    def line(self, x1, y1, x2, y2, stroke="#000000", width=1.0, dash="") -> None:
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(
            f'<line x1="{px(x1)}" y1="{px(y1)}" x2="{px(x2)}" y2="{px(y2)}" '
            f'stroke="{stroke}" stroke-width="{px(width)}"{d}/>'
        )

    def polyline(self, points, stroke, width=1.5, cls="", dash="") -> None:
        pts = " ".join(f"{px(x)},{px(y)}" for x, y in points)
        c = f' class="{cls}"' if cls else ""
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(
            f'<polyline{c} points="{pts}" fill="none" stroke="{stroke}" '
            f'stroke-width="{px(width)}"{d}/>'
        )

    def circle(self, cx, cy, r, fill, cls="") -> None:
        c = f' class="{cls}"' if cls else ""
        self.add(f'<circle{c} cx="{px(cx)}" cy="{px(cy)}" r="{px(r)}" fill="{fill}"/>')

    def star(self, cx, cy, r, fill, cls="star") -> None:
        pts = []
        for i in range(10):
            rad = r if i % 2 == 0 else 0.4 * r
            ang = -math.pi / 2 + i * math.pi / 5
            pts.append((cx + rad * math.cos(ang), cy + rad * math.sin(ang)))
        joined = " ".join(f"{px(x)},{px(y)}" for x, y in pts)
        self.add(f'<polygon class="{cls}" points="{joined}" fill="{fill}" stroke="#333333" stroke-width="0.5"/>')

    def text(self, x, y, content, size=12, anchor="middle", rotate=None, cls="") -> None:
        r = f' transform="rotate(-90 {px(x)} {px(y)})"' if rotate else ""
        c = f' class="{cls}"' if cls else ""
        self.add(
            f'<text{c} x="{px(x)}" y="{px(y)}" font-family="sans-serif" '
            f'font-size="{size}" text-anchor="{anchor}"{r}>{esc(content)}</text>'
        )

    def open_group(self, cls: str, attrs: dict | None = None) -> None:
        extra = ""
        if attrs:
            extra = "".join(f' data-{k}="{v}"' for k, v in attrs.items())
        self.add(f'<g class="{cls}"{extra}>')

    def close_group(self) -> None:
        self.add("</g>")

    def render(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="#ffffff"/>\n'
        )
        return head + "\n".join(self.elements) + "\n</svg>\n"


@dataclass
class Axes:
    """Linear data-to-pixel mapping over a pixel box, with frame and ticks."""

    canvas: Canvas
    left: float
    top: float
    right: float
    bottom: float
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def x(self, v: float) -> float:
        f = (v - self.xmin) / (self.xmax - self.xmin)
        return self.left + f * (self.right - self.left)

    def y(self, v: float) -> float:
        f = (v - self.ymin) / (self.ymax - self.ymin)
        return self.bottom - f * (self.bottom - self.top)

    def pt(self, xv: float, yv: float) -> tuple[float, float]:
        return (self.x(xv), self.y(yv))

    def attrs(self) -> dict:
        return {
            "xmin": f"{self.xmin:.9g}",
            "xmax": f"{self.xmax:.9g}",
            "ymin": f"{self.ymin:.9g}",
            "ymax": f"{self.ymax:.9g}",
            "left": px(self.left),
            "right": px(self.right),
            "top": px(self.top),
            "bottom": px(self.bottom),
        }

    def frame(self, xlabel: str, ylabel: str, xticks, yticks, title="") -> None:
        c = self.canvas
        c.rect(self.left, self.top, self.right - self.left, self.bottom - self.top,
               fill="none", stroke="#000000")
        for v in xticks:
            xp = self.x(v)
            c.line(xp, self.bottom, xp, self.bottom + 4)
            c.text(xp, self.bottom + 17, f"{v:g}", size=10)
        for v in yticks:
            yp = self.y(v)
            c.line(self.left - 4, yp, self.left, yp)
            c.text(self.left - 8, yp + 3.5, f"{v:g}", size=10, anchor="end")
        c.text((self.left + self.right) / 2, self.bottom + 34, xlabel, size=12)
        c.text(self.left - 42, (self.top + self.bottom) / 2, ylabel, size=12,
               rotate=True)
        if title:
            c.text((self.left + self.right) / 2, self.top - 9, title, size=13)


def ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    """n+1 evenly spaced round-ish tick values covering [lo, hi]."""
    span = hi - lo
    if span <= 0:
        return [lo]
    step = span / n
    mag = 10 ** math.floor(math.log10(step))
    for m in (1, 2, 2.5, 5, 10):
        if step <= m * mag:
            step = m * mag
            break
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-9 * span:
        out.append(round(v, 10) + 0.0)
        v += step
    return out
