"""Tiny SVG line-chart writer: axes, ticks, polylines, markers, labels."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#555555")


def nice_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if not (math.isfinite(lo) and math.isfinite(hi)):
        return []
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(count - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


class Chart:
    """Accumulates series in data coordinates and renders one SVG document."""

    def __init__(self, title="", xlabel="", ylabel="", width=720, height=460):
        self.title, self.xlabel, self.ylabel = title, xlabel, ylabel
        self.width, self.height = width, height
        self.margin = (70, 30, 50, 60)  # left, right, top, bottom
        self.items = []
        self.xlim = None
        self.ylim = None

    def line(self, xs, ys, label=None, color=None, dash=None, width=1.8):
        self.items.append(("line", list(xs), list(ys), label, color, dash, width))
        return self

    def points(self, xs, ys, label=None, color=None, radius=3.0):
        self.items.append(("points", list(xs), list(ys), label, color, None, radius))
        return self

    def vline(self, x, label=None, color="#777777", dash="6,4"):
        self.items.append(("vline", [x], [], label, color, dash, 1.2))
        return self

    def _limits(self):
        xs = [x for it in self.items for x in it[1] if math.isfinite(x)]
        ys = [y for it in self.items for y in it[2] if math.isfinite(y)]
        xlim = self.xlim or ((min(xs), max(xs)) if xs else (0.0, 1.0))
        ylim = self.ylim or ((min(ys), max(ys)) if ys else (0.0, 1.0))
        if xlim[1] <= xlim[0]:
            xlim = (xlim[0] - 0.5, xlim[1] + 0.5)
        if ylim[1] <= ylim[0]:
            ylim = (ylim[0] - 0.5, ylim[1] + 0.5)
        pad = 0.04 * (ylim[1] - ylim[0])
        return xlim, (ylim[0] - pad, ylim[1] + pad)

    def render(self) -> str:
        (x0, x1), (y0, y1) = self._limits()
        left, right, top, bottom = self.margin
        pw, ph = self.width - left - right, self.height - top - bottom

        def px(x):
            return left + (x - x0) / (x1 - x0) * pw

        def py(y):
            return top + (1 - (y - y0) / (y1 - y0)) * ph

        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}" font-family="sans-serif" font-size="12">',
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="white"/>',
            f'<clipPath id="plot"><rect x="{left}" y="{top}" width="{pw}" height="{ph}"/></clipPath>',
            f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        ]
        for t in nice_ticks(x0, x1):
            if x0 <= t <= x1:
                X = px(t)
                out.append(f'<line x1="{X:.2f}" y1="{top + ph}" x2="{X:.2f}" y2="{top + ph + 5}" stroke="black"/>')
                out.append(f'<text x="{X:.2f}" y="{top + ph + 18}" text-anchor="middle">{t:g}</text>')
        for t in nice_ticks(y0, y1):
            if y0 <= t <= y1:
                Y = py(t)
                out.append(f'<line x1="{left - 5}" y1="{Y:.2f}" x2="{left}" y2="{Y:.2f}" stroke="black"/>')
                out.append(f'<text x="{left - 8}" y="{Y + 4:.2f}" text-anchor="end">{t:g}</text>')
        if self.title:
            out.append(f'<text x="{self.width / 2:.1f}" y="{top - 20}" text-anchor="middle" font-size="15">{escape(self.title)}</text>')
        if self.xlabel:
            out.append(f'<text x="{left + pw / 2:.1f}" y="{self.height - 12}" text-anchor="middle">{escape(self.xlabel)}</text>')
        if self.ylabel:
            out.append(
                f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" '
                f'transform="rotate(-90 16 {top + ph / 2:.1f})">{escape(self.ylabel)}</text>'
            )

        legend = []
        out.append('<g clip-path="url(#plot)">')
        for i, (kind, xs, ys, label, color, dash, width) in enumerate(self.items):
            color = color or PALETTE[i % len(PALETTE)]
            dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
            if kind == "line":
                for run in _finite_runs(xs, ys):
                    pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in run)
                    out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="{width}"{dash_attr}/>')
            elif kind == "points":
                for x, y in zip(xs, ys):
                    if math.isfinite(x) and math.isfinite(y):
                        out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="{width}" fill="{color}"/>')
            elif kind == "vline":
                X = px(xs[0])
                out.append(f'<line x1="{X:.2f}" y1="{top}" x2="{X:.2f}" y2="{top + ph}" stroke="{color}"{dash_attr}/>')
            if label:
                legend.append((label, color, kind))
        out.append("</g>")

        for j, (label, color, kind) in enumerate(legend):
            ly = top + 16 + 16 * j
            lx = left + 12
            if kind == "points":
                out.append(f'<circle cx="{lx + 9}" cy="{ly - 4}" r="3" fill="{color}"/>')
            else:
                out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 18}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
            out.append(f'<text x="{lx + 24}" y="{ly}">{escape(label)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.render())


def _finite_runs(xs, ys):
    run = []
    for x, y in zip(xs, ys):
        if math.isfinite(x) and math.isfinite(y):
            run.append((x, y))
        elif run:
            yield run
            run = []
    if run:
        yield run
