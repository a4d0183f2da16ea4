"""Minimal deterministic SVG writer.

No timestamps, no generated ids: rendering the same data twice produces
byte-identical files, which the golden tests rely on.
"""

from __future__ import annotations


def fmt(x: float) -> str:
    """Fixed-precision coordinate formatting (deterministic, compact)."""
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


class Canvas:
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="0 0 {width} {height}" '
            f'width="{width}" height="{height}">',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        ]

    def line(self, x1, y1, x2, y2, stroke="#222222", width=1.0, dash=None):
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{fmt(x1)}" y1="{fmt(y1)}" x2="{fmt(x2)}" y2="{fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="{width}"{d}/>'
        )

    def polyline(self, points, stroke="#1f77b4", width=1.5):
        if not points:
            return
        pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in points)
        self.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
            f'stroke-width="{width}"/>'
        )

    def rect(self, x, y, w, h, fill):
        self.parts.append(
            f'<rect x="{fmt(x)}" y="{fmt(y)}" width="{fmt(w)}" '
            f'height="{fmt(h)}" fill="{fill}"/>'
        )

    def circle(self, x, y, r, fill="#d62728"):
        self.parts.append(
            f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="{fmt(r)}" fill="{fill}"/>'
        )

    def text(self, x, y, label, size=11, anchor="start", fill="#222222"):
        self.parts.append(
            f'<text x="{fmt(x)}" y="{fmt(y)}" font-family="monospace" '
            f'font-size="{size}" text-anchor="{anchor}" fill="{fill}">'
            f"{escape(label)}</text>"
        )

    def to_bytes(self) -> bytes:
        return ("\n".join(self.parts) + "\n</svg>\n").encode("utf-8")


class Frame:
    """Affine data-to-pixel map with a drawn axis frame."""

    def __init__(self, canvas: Canvas, x_range, y_range, margin=50):
        self.canvas = canvas
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        if self.x1 <= self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 <= self.y0:
            self.y1 = self.y0 + 1.0
        self.left = margin
        self.right = canvas.width - margin // 2
        self.top = margin // 2
        self.bottom = canvas.height - margin

    def px(self, x: float) -> float:
        t = (x - self.x0) / (self.x1 - self.x0)
        return self.left + t * (self.right - self.left)

    def py(self, y: float) -> float:
        t = (y - self.y0) / (self.y1 - self.y0)
        return self.bottom - t * (self.bottom - self.top)

    def draw_frame(self, x_label: str, y_label: str):
        c = self.canvas
        c.line(self.left, self.bottom, self.right, self.bottom)
        c.line(self.left, self.bottom, self.left, self.top)
        for frac in (0.0, 0.5, 1.0):
            xv = self.x0 + frac * (self.x1 - self.x0)
            yv = self.y0 + frac * (self.y1 - self.y0)
            c.text(self.px(xv), self.bottom + 16, f"{xv:.3g}", anchor="middle")
            c.text(self.left - 6, self.py(yv) + 4, f"{yv:.3g}", anchor="end")
        c.text((self.left + self.right) / 2, self.canvas.height - 8,
               x_label, anchor="middle")
        c.text(12, self.top + 10, y_label)


# colorblind-safe-ish cycle for curves and a diverging ramp for integers
CURVE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")

_NEG = ("#08306b", "#2171b5", "#6baed6", "#c6dbef")
_POS = ("#fee0d2", "#fc9272", "#de2d26", "#a50f15")


def integer_color(v: int) -> str:
    """Diverging discrete colormap centred at zero."""
    if v == 0:
        return "#f7f7f7"
    if v > 0:
        return _POS[min(v - 1, len(_POS) - 1)]
    return _NEG[min(-v - 1, len(_NEG) - 1)]
