"""Fixed flat tori and orbit frameworks placed on them.

Positions are stored in Cartesian coordinates; a vertex may sit outside the
fundamental cell, and two positions that differ by a lattice vector name the
same point of the torus.  The lattice matrix holds the generating translations
as rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DegeneratePositionError, SingularLatticeError, StructureError
from .exact import bareiss_rank, rref
from .graph import GainGraph, align_orientations

TRIANGULAR_TOL = 1e-12
FLOAT_INTEGRAL_TOL = 1e-9


def _num(x):
    if isinstance(x, float):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, np.integer):
        return Fraction(int(x))
    return Fraction(x)


def _is_exact(values) -> bool:
    return all(isinstance(x, Fraction) for x in values)


def identity(d: int):
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def mat_vec_row(z, L):
    """Row vector ``z`` times matrix ``L``."""
    d = len(L)
    return tuple(sum(z[r] * L[r][c] for r in range(d)) for c in range(len(L[0])))


def _exact_inverse(L):
    d = len(L)
    aug = [list(L[i]) + [Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    reduced, pivots = rref(aug, 2 * d)
    if pivots[:d] != list(range(d)) or len(pivots) < d:
        raise SingularLatticeError("lattice matrix is singular")
    return tuple(tuple(row[d:]) for row in reduced)


@dataclass(frozen=True)
class Torus:
    """R^d modulo the lattice generated by the rows of ``L``."""

    L: tuple[tuple, ...]

    def __post_init__(self):
        rows = tuple(tuple(_num(x) for x in row) for row in self.L)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise StructureError("lattice matrix must be square and non-empty")
        object.__setattr__(self, "L", rows)
        if self.exact:
            if bareiss_rank(rows) < d:
                raise SingularLatticeError("lattice matrix is singular")
        elif abs(np.linalg.det(np.asarray(rows, dtype=float))) < 1e-300:
            raise SingularLatticeError("lattice matrix is singular")

    @classmethod
    def unit(cls, d: int) -> Torus:
        return cls(identity(d))

    @property
    def d(self) -> int:
        return len(self.L)

    @property
    def exact(self) -> bool:
        return _is_exact(x for row in self.L for x in row)

    @property
    def is_unit(self) -> bool:
        return all(self.L[i][j] == (1 if i == j else 0) for i in range(self.d) for j in range(self.d))

    @property
    def is_lower_triangular(self) -> bool:
        return all(self.L[i][j] == 0 for i in range(self.d) for j in range(i + 1, self.d))

    def inverse(self):
        if self.exact:
            return _exact_inverse(self.L)
        return tuple(tuple(r) for r in np.linalg.inv(np.asarray(self.L, dtype=float)).tolist())

    def translate(self, z):
        """Cartesian image ``z L`` of the integer vector ``z``."""
        return mat_vec_row(z, self.L)


@dataclass(frozen=True)
class OrbitFramework:
    graph: GainGraph
    torus: Torus
    positions: tuple[tuple, ...]
    allow_degenerate: bool = False

    def __post_init__(self):
        g = self.graph
        if g.d != self.torus.d:
            raise StructureError(f"graph is {g.d}-periodic but the torus has dimension {self.torus.d}")
        pos = tuple(tuple(_num(x) for x in p) for p in self.positions)
        if len(pos) != g.n:
            raise StructureError(f"{g.n} vertices but {len(pos)} positions")
        for v, p in enumerate(pos):
            if len(p) != g.d:
                raise StructureError(f"position of vertex {v} has length {len(p)}, expected {g.d}")
        object.__setattr__(self, "positions", pos)
        if not self.allow_degenerate:
            clash = self.coincident_pair()
            if clash is not None:
                raise DegeneratePositionError(
                    f"vertices {clash[0]} and {clash[1]} occupy the same point of the torus"
                )

    @property
    def d(self) -> int:
        return self.graph.d

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def exact(self) -> bool:
        return self.torus.exact and _is_exact(x for p in self.positions for x in p)

    def fractional(self):
        """Positions in lattice coordinates (``p L^-1``)."""
        inv = self.torus.inverse()
        return [mat_vec_row(p, inv) for p in self.positions]

    def coincident_pair(self):
        seen = {}
        exact = self.exact
        for v, q in enumerate(self.fractional()):
            if exact:
                key = tuple(x - math.floor(x) for x in q)
            else:
                key = tuple(round((x - math.floor(x)) * 1e9) % 1_000_000_000 for x in q)
            if key in seen:
                return seen[key], v
            seen[key] = v
        return None

    def with_positions(self, positions) -> OrbitFramework:
        return OrbitFramework(self.graph, self.torus, tuple(positions), self.allow_degenerate)

    def with_graph(self, graph: GainGraph) -> OrbitFramework:
        return OrbitFramework(graph, self.torus, self.positions, self.allow_degenerate)


class LatticeNormalization(NamedTuple):
    rotation: np.ndarray
    lower: np.ndarray
    reflected: bool


def normalize_lattice(L) -> LatticeNormalization:
    """Rotate the lattice generators so the lattice matrix becomes lower triangular.

    Returns ``R`` (orthogonal, determinant +1) and ``L0 = L R^T``.  The
    diagonal of ``L0`` is positive unless ``det L < 0``; then no rotation can
    achieve that, the last diagonal entry stays negative and ``reflected`` is
    set.
    """
    a = np.asarray([[float(x) for x in row] for row in getattr(L, "L", L)], dtype=float)
    d = a.shape[0]
    if a.shape != (d, d) or d == 0:
        raise StructureError("lattice matrix must be square and non-empty")
    if abs(np.linalg.det(a)) < 1e-12 * max(1.0, np.abs(a).max() ** d):
        raise SingularLatticeError("lattice matrix is singular")
    q, u = np.linalg.qr(a.T)
    signs = np.sign(np.diag(u))
    signs[signs == 0] = 1.0
    q = q * signs
    u = signs[:, None] * u
    reflected = bool(np.linalg.det(q) < 0)
    if reflected:
        q[:, -1] *= -1
        u[-1, :] *= -1
    rotation = q.T
    lower = a @ rotation.T
    lower[np.triu_indices(d, 1)] = np.where(
        np.abs(lower[np.triu_indices(d, 1)]) < TRIANGULAR_TOL * max(1.0, np.abs(a).max()),
        0.0,
        lower[np.triu_indices(d, 1)],
    )
    return LatticeNormalization(rotation, lower, reflected)


def to_unit_torus(F: OrbitFramework) -> OrbitFramework:
    """Apply the linear map sending the lattice to the identity (``x -> x L^-1``)."""
    if F.torus.is_unit:
        return F
    return OrbitFramework(
        F.graph, Torus.unit(F.d) if F.torus.exact else Torus(np.eye(F.d).tolist()),
        tuple(F.fractional()), F.allow_degenerate,
    )


def apply_affine(F: OrbitFramework, B, t) -> OrbitFramework:
    """Image of ``F`` under ``x -> x B + t``, acting on the points and the lattice rows."""
    d = F.d
    B = tuple(tuple(_num(x) for x in row) for row in B)
    t = tuple(_num(x) for x in t)
    pos = tuple(tuple(a + b for a, b in zip(mat_vec_row(p, B), t)) for p in F.positions)
    lattice = tuple(mat_vec_row(row, B) for row in F.torus.L)
    assert len(lattice) == d
    return OrbitFramework(F.graph, Torus(lattice), pos, F.allow_degenerate)


def _is_integral(x, exact):
    if exact:
        return x.denominator == 1
    return abs(x - round(x)) < FLOAT_INTEGRAL_TOL


@dataclass(frozen=True)
class Congruence:
    congruent: bool
    translation: tuple | None = None
    offsets: tuple[tuple[int, ...], ...] | None = None
    reason: str = ""

    def __bool__(self):
        return self.congruent


def congruent(F1: OrbitFramework, F2: OrbitFramework) -> Congruence:
    """Decide congruence of two frameworks on the same labelled base graph.

    Both are first carried to the unit torus.  The translation is fixed by
    the first vertex, then every vertex must land on its partner up to an
    integer vector ``l(v)`` and every gain must satisfy
    ``n_e = m_e + l(head) - l(tail)``.
    """
    if F1.d != F2.d or F1.n != F2.n:
        raise StructureError("frameworks do not share a base graph")
    n_gains = align_orientations(F1.graph, F2.graph)
    p = to_unit_torus(F1).positions
    q = to_unit_torus(F2).positions
    exact = F1.exact and F2.exact
    d = F1.d
    if F1.n == 0:
        return Congruence(True, tuple(Fraction(0) for _ in range(d)), ())
    t = tuple(b - a for a, b in zip(p[0], q[0]))
    offsets = []
    for v in range(F1.n):
        ell = tuple(a + s - b for a, s, b in zip(p[v], t, q[v]))
        if not all(_is_integral(x, exact) for x in ell):
            return Congruence(False, reason=f"vertex {v} is not a translate of its partner")
        offsets.append(tuple(int(round(x)) for x in ell))
    for k, e in enumerate(F1.graph.edges):
        expected = tuple(m + b - a for m, a, b in zip(e.gain, offsets[e.tail], offsets[e.head]))
        if tuple(n_gains[k]) != expected:
            return Congruence(False, reason=f"gain of edge {k} is inconsistent with the translation")
    return Congruence(True, t, tuple(offsets))


def edge_vector(F: OrbitFramework, i: int, j: int, m):
    """``p_i - (p_j + m L)``."""
    shift = F.torus.translate(m)
    return tuple(a - (b + s) for a, b, s in zip(F.positions[i], F.positions[j], shift))


def squared_edge_length(F: OrbitFramework, i: int, j: int, m):
    return sum(x * x for x in edge_vector(F, i, j, m))


def edge_length(F: OrbitFramework, i: int, j: int, m) -> float:
    """Euclidean length of ``p_i - (p_j + m L)``; the vertex order matters."""
    return math.sqrt(squared_edge_length(F, i, j, m))
