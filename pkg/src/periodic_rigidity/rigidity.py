"""The fixed-torus rigidity matrix, its rank, flexes and stresses."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import exact as la
from .graph import GainGraph, require_connected
from .torus import OrbitFramework, Torus, edge_vector

# positions for generic sampling are k / GENERIC_DENOMINATOR with k uniform in [0, 2**31)
GENERIC_DENOMINATOR = 2_147_483_647  # 2**31 - 1, prime
DEFAULT_TRIALS = 3


@dataclass(frozen=True)
class RigidityMatrix:
    rows: tuple[tuple, ...]
    row_edges: tuple[int, ...]
    d: int
    n: int
    exact: bool = True

    @property
    def shape(self):
        return len(self.rows), self.d * self.n

    def block(self, row: int, vertex: int):
        """The d entries of ``row`` in the column block of ``vertex``."""
        return self.rows[row][self.d * vertex: self.d * (vertex + 1)]


def build_rigidity_matrix(F: OrbitFramework, float_mode: bool = False) -> RigidityMatrix:
    """One row per edge ``{i, j; m}``: ``p_i - (p_j + mL)`` at i and its negative at j."""
    require_connected(F.graph)
    d, n = F.d, F.n
    exact = F.exact and not float_mode
    zero = Fraction(0) if exact else 0.0
    rows = []
    for e in F.graph.edges:
        row = [zero] * (d * n)
        vec = edge_vector(F, e.tail, e.head, e.gain)
        if not exact:
            vec = tuple(float(x) for x in vec)
        for c in range(d):
            row[d * e.tail + c] += vec[c]
            row[d * e.head + c] -= vec[c]
        rows.append(tuple(row))
    return RigidityMatrix(tuple(rows), tuple(range(len(rows))), d, n, exact)


def rank(M: RigidityMatrix) -> int:
    """Exact rank (fraction-free elimination) or numerical rank in float mode."""
    if not M.rows:
        return 0
    if M.exact:
        return la.bareiss_rank(M.rows)
    return la.float_rank(M.rows)


def target_rank(d: int, n: int) -> int:
    return d * n - d


def is_infinitesimally_rigid(F: OrbitFramework, float_mode: bool = False) -> bool:
    return rank(build_rigidity_matrix(F, float_mode)) == target_rank(F.d, F.n)


def trivial_motion_basis(d: int, n: int):
    """The d infinitesimal translations, as velocity vectors of length ``d * n``."""
    return [[Fraction(int(c == k)) for _ in range(n) for c in range(d)] for k in range(d)]


@dataclass(frozen=True)
class FlexBasis:
    vectors: tuple[tuple, ...]
    d: int
    n: int

    def __len__(self):
        return len(self.vectors)

    def velocities(self, index: int):
        v = self.vectors[index]
        return [tuple(v[self.d * i: self.d * (i + 1)]) for i in range(self.n)]


@dataclass(frozen=True)
class StressBasis:
    vectors: tuple[tuple, ...]

    def __len__(self):
        return len(self.vectors)


def flex_basis(F: OrbitFramework, float_mode: bool = False) -> FlexBasis:
    """Kernel of the rigidity matrix intersected with the orthogonal complement of translations.

    Appending the translation vectors as extra rows makes every returned
    vector exactly orthogonal to them.
    """
    M = build_rigidity_matrix(F, float_mode)
    rows = list(M.rows) + [tuple(t) for t in trivial_motion_basis(F.d, F.n)]
    ncols = F.d * F.n
    if M.exact:
        basis = la.nullspace(rows, ncols)
    else:
        basis = la.float_nullspace(rows, ncols)
    return FlexBasis(tuple(tuple(v) for v in basis), F.d, F.n)


def stress_basis(F: OrbitFramework, float_mode: bool = False) -> StressBasis:
    """Row dependencies ``w`` with ``w R = 0``."""
    M = build_rigidity_matrix(F, float_mode)
    ncols = F.d * F.n
    if not M.rows:
        return StressBasis(())
    if M.exact:
        basis = la.left_nullspace(M.rows, ncols)
    else:
        transposed = [[row[c] for row in M.rows] for c in range(ncols)]
        basis = la.float_nullspace(transposed, len(M.rows))
    return StressBasis(tuple(tuple(v) for v in basis))


def is_motion(F: OrbitFramework, velocities) -> bool:
    """Exact check of ``(u_i - u_j) . (p_i - p_j - mL) = 0`` on every edge."""
    for e in F.graph.edges:
        vec = edge_vector(F, e.tail, e.head, e.gain)
        du = [a - b for a, b in zip(velocities[e.tail], velocities[e.head])]
        if sum(x * y for x, y in zip(du, vec)) != 0:
            return False
    return True


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"generic-rank:{seed}:{trial}")


def random_positions(n: int, d: int, rng: random.Random):
    return tuple(
        tuple(Fraction(rng.randrange(2**31), GENERIC_DENOMINATOR) for _ in range(d))
        for _ in range(n)
    )


def generic_realization(g: GainGraph, seed: int = 0, trial: int = 0) -> OrbitFramework:
    """A random exact-rational placement on the unit torus, reproducible from (seed, trial)."""
    pos = random_positions(g.n, g.d, _trial_rng(seed, trial))
    return OrbitFramework(g, Torus.unit(g.d), pos, allow_degenerate=True)


def generic_rank(g: GainGraph, trials: int = DEFAULT_TRIALS, seed: int = 0, float_mode: bool = False) -> int:
    """Largest rigidity-matrix rank seen over ``trials`` random rational placements.

    Each trial draws its own stream from ``(seed, trial)``, so the result does
    not depend on evaluation order.  Sampling stops early once no larger rank
    is possible.
    """
    require_connected(g)
    ceiling = min(sum(1 for e in g.edges if not e.is_loop), target_rank(g.d, g.n))
    best = 0
    for trial in range(max(trials, 1)):
        F = generic_realization(g, seed, trial)
        best = max(best, rank(build_rigidity_matrix(F, float_mode)))
        if best >= ceiling:
            break
    return best
