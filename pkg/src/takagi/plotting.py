"""SVG figures of the graph of T, humps, level lines and hump statistics.

Coordinates are computed exactly and converted to floats only when
handed to matplotlib.  Output is byte-stable: the SVG date stamp is
dropped and element ids use a fixed hash salt.
"""
from __future__ import annotations

import io
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import matplotlib
from matplotlib.figure import Figure
from matplotlib.patches import Rectangle

from .digits import enumerate_balanced
from .errors import ResourceError
from .humps import hump
from .levelsets import jt_mass, average_count_exact
from .numerics import RatInterval

MAX_PLOT_DEPTH = 16
MAX_PLOT_HUMP_ORDER = 6


def graph_points(depth: int) -> list[tuple[Fraction, Fraction]]:
    """``(x, T(x))`` at every dyadic ``x = k/2**depth``, exactly."""
    if depth > MAX_PLOT_DEPTH:
        raise ResourceError("plot depth", depth, MAX_PLOT_DEPTH)
    # T(k/2^n) * 2^n and slope D_n, refined level by level
    layer = [(0, 0)]
    for _ in range(depth):
        layer = [(2 * B + bit * (s + 1), s + (1 if bit == 0 else -1))
                 for B, s in layer for bit in (0, 1)]
    scale = 1 << depth
    pts = [(Fraction(k, scale), Fraction(B, scale)) for k, (B, s) in enumerate(layer)]
    pts.append((Fraction(1), Fraction(0)))
    return pts


def _save(fig: Figure) -> str:
    buf = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "takagi", "svg.fonttype": "none"}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def render_graph(depth: int, level=None, hump_order: Optional[int] = None,
                 brackets: Sequence[RatInterval] = (),
                 points: Iterable[Fraction] = ()) -> str:
    if hump_order is not None and hump_order > MAX_PLOT_HUMP_ORDER:
        raise ResourceError("plot hump order", hump_order, MAX_PLOT_HUMP_ORDER)
    pts = graph_points(depth)
    fig = Figure(figsize=(8, 5))
    ax = fig.add_subplot()
    if hump_order:
        for w in enumerate_balanced(hump_order):
            if not w:
                continue
            h = hump(w)
            ax.add_patch(Rectangle(
                (float(h.I.lo), float(h.J.lo)), float(h.I.width), float(h.J.width),
                facecolor="tab:orange" if h.leading else "tab:gray",
                alpha=0.25, linewidth=0.5, edgecolor="k", gid=f"hump-{w}",
            ))
    ax.plot([float(x) for x, _ in pts], [float(v) for _, v in pts],
            color="k", linewidth=0.6, gid="graph")
    if level is not None:
        ax.axhline(float(level), color="tab:blue", linewidth=0.8, gid="level-line")
        for i, b in enumerate(brackets):
            ax.plot([float(b.lo), float(b.hi)], [float(level)] * 2, color="tab:red",
                    linewidth=3, solid_capstyle="butt", gid=f"bracket-{i}")
        pts_x = [float(x) for x in points]
        if pts_x:
            ax.plot(pts_x, [float(level)] * len(pts_x), "o", color="tab:red",
                    markersize=3, gid="exact-points")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 0.7)
    ax.set_xlabel("x")
    ax.set_ylabel("T(x)")
    return _save(fig)


def render_mass(max_order: int) -> str:
    """Leading Jt mass and mean hit count against the maximal order."""
    orders = list(range(max_order + 1))
    mass = [jt_mass(m)[0] for m in orders]
    avg = [average_count_exact(m) for m in orders]
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    ax.plot(orders, [float(v) for v in mass], "o-", label="Jt mass", gid="jt-mass")
    ax.plot(orders, [float(v) for v in avg], "s-", label="mean count", gid="avg-count")
    ax.axhline(1.0, color="gray", linestyle=":", linewidth=0.8)
    ax.axhline(1.5, color="gray", linestyle="--", linewidth=0.8)
    ax.set_xlabel("max order")
    ax.legend(loc="lower right")
    return _save(fig)
