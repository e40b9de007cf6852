"""Figures: hand-written SVG, plus matplotlib PNGs for reports."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .predictor import ShapePrediction, lsvk_curve
from .schensted import Partition

PALETTE = {"shape": "#222222", "predict": "#c0392b", "lsvk": "#2471a3",
           "arm": "#1e8449", "leg": "#7d3c98", "grid": "#dddddd"}


@dataclass
class _Canvas:
    """Maps data coordinates (y up) onto an SVG viewport (y down)."""

    xmax: float
    ymax: float
    size: int = 480
    pad: int = 40

    @property
    def scale(self) -> float:
        return (self.size - 2 * self.pad) / max(self.xmax, self.ymax, 1e-9)

    def xy(self, x: float, y: float) -> str:
        return f"{self.pad + x * self.scale:.2f},{self.size - self.pad - y * self.scale:.2f}"

    def polyline(self, pts, color: str, width: float = 1.5, dash: Optional[str] = None) -> str:
        d = " ".join(self.xy(x, y) for x, y in pts)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        return (f'<polyline points="{d}" fill="none" stroke="{color}" '
                f'stroke-width="{width}"{extra}/>')

    def text(self, x: float, y: float, s: str, anchor: str = "middle") -> str:
        px, py = self.xy(x, y).split(",")
        return (f'<text x="{px}" y="{py}" font-size="11" font-family="sans-serif" '
                f'text-anchor="{anchor}">{escape(s)}</text>')

    def document(self, body: Sequence[str], title: str) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" '
                f'height="{self.size}" viewBox="0 0 {self.size} {self.size}">')
        return "\n".join([head, f"<title>{escape(title)}</title>",
                          f'<rect width="{self.size}" height="{self.size}" fill="white"/>',
                          *body, "</svg>", ""])


def _axes(cv: _Canvas, xlabel: str, ylabel: str) -> list[str]:
    out = [cv.polyline([(0, 0), (cv.xmax, 0)], "#000000", 1),
           cv.polyline([(0, 0), (0, cv.ymax)], "#000000", 1)]
    out.append(cv.text(cv.xmax / 2, -0.07 * cv.ymax, xlabel))
    out.append(cv.text(-0.05 * cv.xmax, cv.ymax * 1.02, ylabel, "start"))
    return out


def shape_curves(lam: Partition, pred: Optional[ShapePrediction] = None, lsvk: bool = False,
                 normalize: bool = False) -> dict[str, np.ndarray]:
    """Staircase, prediction and optional comparison curve as ``(k, 2)`` arrays."""
    s = 1 / math.sqrt(lam.n) if normalize else 1.0
    curves = {"shape": np.array(lam.staircase(), dtype=float) * s}
    if pred is not None:
        lo, hi = pred.domain
        xs = np.array(sorted({float(lo), float(pred.x0), float(hi)}))
        curves["predict"] = np.column_stack([xs, pred.L_array(xs)]) * s
    if lsvk:
        pts = lsvk_curve()
        curves["lsvk"] = pts if normalize else pts * math.sqrt(lam.n)
    return curves


def shape_svg(lam: Partition, pred: Optional[ShapePrediction] = None, lsvk: bool = False,
              normalize: bool = False, title: str = "") -> str:
    """Boundary of the diagram with the two-slope line and the random-permutation curve."""
    curves = shape_curves(lam, pred, lsvk, normalize)
    top = max(float(c.max()) for c in curves.values())
    cv = _Canvas(top * 1.05, top * 1.05)
    body = _axes(cv, "x / sqrt(n)" if normalize else "x", "y / sqrt(n)" if normalize else "y")
    dashes = {"shape": None, "predict": "6 3", "lsvk": "2 3"}
    for name, pts in curves.items():
        body.append(cv.polyline(pts, PALETTE[name], 1.5, dashes[name]))
    return cv.document(body, title or f"shape, n = {lam.n}")


def armleg_svg(exponents: Sequence[float], arm: Sequence[float], leg: Sequence[float],
               title: str = "normalized arm and leg") -> str:
    """Normalized arm and leg against ``log2 n``."""
    xs = np.asarray(exponents, dtype=float)
    top = max(max(arm), max(leg)) * 1.1
    x0 = float(xs.min())
    cv = _Canvas(float(xs.max() - x0), top)
    body = _axes(cv, "log2 n", "length / sqrt(n)")
    for series, color in ((arm, PALETTE["arm"]), (leg, PALETTE["leg"])):
        body.append(cv.polyline(zip(xs - x0, series), color))
    for e in range(math.ceil(x0), int(xs.max()) + 1, max(1, int(xs.max() - x0) // 10)):
        body.append(cv.text(e - x0, -0.03 * top, str(e)))
    return cv.document(body, title)


# ---------------------------------------------------------------------------
# matplotlib


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def shape_png(path, lam: Partition, pred: Optional[ShapePrediction] = None,
              lsvk: bool = False, normalize: bool = False, title: str = "") -> None:
    plt = _pyplot()
    curves = shape_curves(lam, pred, lsvk, normalize)
    fig, ax = plt.subplots(figsize=(5, 5))
    styles = {"shape": ("-", "staircase"), "predict": ("--", "two-slope prediction"),
              "lsvk": (":", "random-permutation limit")}
    for name, pts in curves.items():
        ls, label = styles[name]
        ax.plot(pts[:, 0], pts[:, 1], ls, color=PALETTE[name], lw=1.4, label=label)
    ax.set_aspect("equal")
    ax.set_xlim(left=0)
    ax.set_ylim(bottom=0)
    ax.legend(frameon=False, fontsize=8)
    ax.set_title(title or f"n = {lam.n}", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def armleg_png(path, exponents, arm, leg, title: str = "normalized arm and leg") -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.plot(exponents, arm, "s-", ms=3, color=PALETTE["arm"], label="arm / sqrt(n)")
    ax.plot(exponents, leg, "o--", ms=3, color=PALETTE["leg"], label="leg / sqrt(n)")
    ax.set_xlabel("log2 n")
    ax.legend(frameon=False, fontsize=8)
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
