"""Static SVG drawings of orbit frameworks and derived windows.

Elements carry a ``class`` attribute (``cell``, ``bar``, ``joint``, ``arrow``)
so drawings can be inspected programmatically.  Output depends only on the
inputs, never on time or randomness.
"""

from __future__ import annotations

import math
from itertools import product

from .derived import expand_window, lift_flex
from .errors import ProjectionError

PIXELS_PER_CELL = 240.0
MARGIN = 24.0
ARROW_FRACTION = 0.10


def _xy(point):
    x = float(point[0])
    y = float(point[1]) if len(point) > 1 else 0.0
    return x, y


class _Canvas:
    def __init__(self, points, scale):
        xs = [p[0] for p in points] or [0.0]
        ys = [p[1] for p in points] or [0.0]
        self.xmin, self.xmax = min(xs), max(xs)
        self.ymin, self.ymax = min(ys), max(ys)
        self.scale = scale
        self.parts = []

    def map(self, p):
        x, y = p
        return (MARGIN + (x - self.xmin) * self.scale, MARGIN + (self.ymax - y) * self.scale)

    @property
    def size(self):
        w = (self.xmax - self.xmin) * self.scale + 2 * MARGIN
        h = (self.ymax - self.ymin) * self.scale + 2 * MARGIN
        return w, h

    def line(self, a, b, cls, extra=""):
        (x1, y1), (x2, y2) = self.map(a), self.map(b)
        self.parts.append(
            f'<line class="{cls}" x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}"{extra}/>'
        )

    def polygon(self, pts, cls):
        coords = " ".join("{:.3f},{:.3f}".format(*self.map(p)) for p in pts)
        self.parts.append(f'<polygon class="{cls}" points="{coords}"/>')

    def circle(self, p, cls, label):
        x, y = self.map(p)
        self.parts.append(
            f'<circle class="{cls}" cx="{x:.3f}" cy="{y:.3f}" r="5"><title>{label}</title></circle>'
        )

    def render(self):
        w, h = self.size
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0f}" height="{h:.0f}" '
            f'viewBox="0 0 {w:.3f} {h:.3f}">\n'
            "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"4\" "
            "orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"#c0392b\"/></marker></defs>\n"
            "<style>.cell{fill:none;stroke:#6fa8dc;stroke-width:2}"
            ".bar{stroke:#222;stroke-width:2}"
            ".joint{fill:#f6b26b;stroke:#222;stroke-width:1}"
            ".arrow{stroke:#c0392b;stroke-width:2;marker-end:url(#head)}</style>\n"
        )
        return head + "\n".join(self.parts) + ("\n" if self.parts else "") + "</svg>\n"


def _cell_corners(L, z):
    d = len(L)
    rows = [_xy(r) for r in L]
    origin = [0.0, 0.0]
    for k in range(d):
        origin[0] += z[k] * rows[k][0]
        origin[1] += z[k] * rows[k][1]
    a = rows[0]
    b = rows[1] if d > 1 else (0.0, 0.0)
    o = tuple(origin)
    if d == 1:
        return [o, (o[0] + a[0], o[1] + a[1])]
    return [o, (o[0] + a[0], o[1] + a[1]), (o[0] + a[0] + b[0], o[1] + a[1] + b[1]), (o[0] + b[0], o[1] + b[1])]


def _cell_size(L):
    return max(math.hypot(*_xy(r)) for r in L) or 1.0


def _arrow_scale(velocities, cell):
    longest = max((math.hypot(*_xy(u)) for u in velocities), default=0.0)
    if longest == 0:
        return 0.0
    return ARROW_FRACTION * cell / longest


def render_svg(F, window=None, flex=None, project: bool = False) -> str:
    """Draw ``F`` on its fundamental cell, or a derived window ``(lo, hi)``.

    Without a window each orbit edge is drawn once, from its tail to the
    translated copy of its head.  ``flex`` (one velocity per orbit vertex)
    adds arrows scaled so the longest is a tenth of the cell size.
    """
    if F.d > 3 and not project:
        raise ProjectionError(
            f"cannot draw a {F.d}-periodic framework; pass project=True to draw the first two coordinates"
        )
    L = F.torus.L
    cell = _cell_size(L)
    joints, bars, arrows, cells = [], [], [], []
    if window is None:
        cells.append(_cell_corners(L, (0,) * F.d))
        for v, p in enumerate(F.positions):
            joints.append((_xy(p), f"v{v}"))
        for e in F.graph.edges:
            shift = F.torus.translate(e.gain)
            far = [a + b for a, b in zip(F.positions[e.head], shift)]
            bars.append((_xy(F.positions[e.tail]), _xy(far)))
        if flex is not None:
            k = _arrow_scale(flex, cell)
            for p, u in zip(F.positions, flex):
                (x, y), (ux, uy) = _xy(p), _xy(u)
                arrows.append(((x, y), (x + k * ux, y + k * uy)))
    else:
        lo, hi = window
        W = expand_window(F, lo, hi)
        for z in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            cells.append(_cell_corners(L, z))
        for key in W.vertices:
            joints.append((_xy(W.positions[key]), f"v{key[0]} z={key[1]}"))
        for a, b in W.endpoints:
            bars.append((_xy(W.positions[a]), _xy(W.positions[b])))
        if flex is not None:
            lifted = lift_flex(flex, W)
            k = _arrow_scale(flex, cell)
            for key in W.vertices:
                (x, y), (ux, uy) = _xy(W.positions[key]), _xy(lifted[key])
                arrows.append(((x, y), (x + k * ux, y + k * uy)))
    points = [p for c in cells for p in c] + [p for p, _ in joints]
    points += [q for bar in bars for q in bar] + [q for arrow in arrows for q in arrow]
    canvas = _Canvas(points, PIXELS_PER_CELL / cell)
    for corners in cells:
        if len(corners) == 2:
            canvas.line(corners[0], corners[1], "cell")
        else:
            canvas.polygon(corners, "cell")
    for a, b in bars:
        canvas.line(a, b, "bar")
    for a, b in arrows:
        canvas.line(a, b, "arrow")
    for p, label in joints:
        canvas.circle(p, "joint", label)
    return canvas.render()
