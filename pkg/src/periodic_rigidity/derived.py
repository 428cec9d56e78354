"""Finite windows of the derived periodic framework.

The copy of vertex ``v`` in cell ``z`` sits at ``p(v) + z L``; the copy of
edge ``{i, j; m}`` in cell ``z`` joins ``(i, z)`` to ``(j, z + m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DomainError
from .torus import OrbitFramework, squared_edge_length
from .torus import edge_length as _edge_length


@dataclass(frozen=True)
class DerivedWindow:
    lo: tuple[int, ...]
    hi: tuple[int, ...]
    vertices: tuple[tuple[int, tuple[int, ...]], ...]
    positions: dict
    edges: tuple[tuple[int, tuple[int, ...]], ...]
    endpoints: tuple[tuple[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]]], ...]

    @property
    def cells(self):
        return list(product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi))))


def _in_box(z, lo, hi):
    return all(a <= x <= b for x, a, b in zip(z, lo, hi))


def expand_window(F: OrbitFramework, lo, hi) -> DerivedWindow:
    """All fiber vertices with cell index in ``[lo, hi]`` and the edges between them.

    Ordering is lexicographic in the cell index, then by vertex or edge id.
    Positions are Cartesian, using the framework's own lattice.
    """
    d = F.d
    lo, hi = tuple(int(x) for x in lo), tuple(int(x) for x in hi)
    if len(lo) != d or len(hi) != d:
        raise DomainError(f"window bounds must have length {d}")
    if any(a > b for a, b in zip(lo, hi)):
        raise DomainError(f"empty window: lo={lo}, hi={hi}")
    cells = list(product(*(range(a, b + 1) for a, b in zip(lo, hi))))
    vertices = []
    positions = {}
    for z in cells:
        shift = F.torus.translate(z)
        for v in range(F.n):
            vertices.append((v, z))
            positions[(v, z)] = tuple(a + b for a, b in zip(F.positions[v], shift))
    edges = []
    endpoints = []
    for z in cells:
        for k, e in enumerate(F.graph.edges):
            w = tuple(a + b for a, b in zip(z, e.gain))
            if _in_box(w, lo, hi):
                edges.append((k, z))
                endpoints.append(((e.tail, z), (e.head, w)))
    return DerivedWindow(lo, hi, tuple(vertices), positions, tuple(edges), tuple(endpoints))


def fiber_squared_lengths(F: OrbitFramework, e: int, zs):
    """Exact squared lengths of the copies of edge ``e`` in the cells ``zs``."""
    edge = F.graph.edges[e]
    out = []
    for z in zs:
        shift_a = F.torus.translate(z)
        shift_b = F.torus.translate(tuple(a + b for a, b in zip(z, edge.gain)))
        pa = [x + s for x, s in zip(F.positions[edge.tail], shift_a)]
        pb = [x + s for x, s in zip(F.positions[edge.head], shift_b)]
        out.append(sum((a - b) ** 2 for a, b in zip(pa, pb)))
    return out


def fiber_edge_lengths(F: OrbitFramework, e: int, zs):
    return [float(x) ** 0.5 for x in fiber_squared_lengths(F, e, zs)]


def orbit_squared_length(F: OrbitFramework, e: int):
    edge = F.graph.edges[e]
    return squared_edge_length(F, edge.tail, edge.head, edge.gain)


def orbit_edge_length(F: OrbitFramework, e: int) -> float:
    edge = F.graph.edges[e]
    return _edge_length(F, edge.tail, edge.head, edge.gain)


def lift_flex(velocities, W: DerivedWindow) -> dict:
    """Copy each orbit vertex velocity to its whole fiber inside the window."""
    return {(v, z): tuple(velocities[v]) for v, z in W.vertices}


def window_constraint_residuals(W: DerivedWindow, field) -> list:
    """``(p(a) - p(b)) . (u(a) - u(b))`` for every window edge."""
    out = []
    for a, b in W.endpoints:
        pa, pb = W.positions[a], W.positions[b]
        ua, ub = field[a], field[b]
        out.append(sum((x - y) * (s - t) for x, y, s, t in zip(pa, pb, ua, ub)))
    return out
