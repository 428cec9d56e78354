"""T-gain relabelling along a spanning tree.

Every vertex gets a potential, the net gain of its tree path from the root;
edge gains are then re-gauged so tree edges carry zero while every cycle keeps
its net gain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import StructureError
from .graph import (
    GainGraph,
    _vadd,
    _vsub,
    bfs_tree,
    check_spanning_tree,
    net_gain,
    require_connected,
    tree_paths,
)


@dataclass(frozen=True)
class TPotentials:
    root: int
    tree: tuple[int, ...]
    potential: tuple[tuple[int, ...], ...]

    def __getitem__(self, v):
        return self.potential[v]


def _resolve_tree(graph, tree, root):
    if not 0 <= root < max(graph.n, 1):
        raise StructureError(f"root {root} is not a vertex")
    if tree is None:
        require_connected(graph)
        return bfs_tree(graph, 0)
    return check_spanning_tree(graph, tree)


def t_potentials(graph: GainGraph, tree=None, root: int = 0) -> TPotentials:
    """Net gain of the tree path from ``root`` to every vertex.

    ``tree=None`` selects the breadth-first tree from vertex 0.
    """
    tree = _resolve_tree(graph, tree, root)
    paths = tree_paths(graph, tree, root)
    pots = tuple(net_gain(graph, paths[v]) for v in range(graph.n))
    return TPotentials(root, tuple(tree), pots)


def t_gains(graph: GainGraph, tree=None, root: int = 0, potentials: TPotentials | None = None) -> GainGraph:
    """Relabel gains as ``pot(tail) + m(e) - pot(head)``; orientations are kept."""
    pots = potentials if potentials is not None else t_potentials(graph, tree, root)
    gains = [
        _vsub(_vadd(pots[e.tail], e.gain), pots[e.head]) for e in graph.edges
    ]
    return graph.with_gains(gains)


def local_gain_generators(graph: GainGraph, root: int = 0, tree=None) -> list[tuple[int, ...]]:
    """T-gains of the non-tree edges; they generate the local gain group at ``root``."""
    pots = t_potentials(graph, tree, root)
    relabelled = t_gains(graph, potentials=pots)
    in_tree = set(pots.tree)
    return [e.gain for k, e in enumerate(relabelled.edges) if k not in in_tree]


def shifted_positions(positions, potentials: TPotentials, lattice=None):
    """Move each vertex by its potential times the lattice matrix.

    ``lattice`` may be a Torus, a d x d row matrix, or None (unit torus).

    With these positions the T-gain framework has literally the same rigidity
    matrix rows as the original one.
    """
    lattice = getattr(lattice, "L", lattice)
    out = []
    for v, p in enumerate(positions):
        z = potentials[v]
        d = len(p)
        if lattice is None:
            shift = [Fraction(z[c]) for c in range(d)]
        else:
            shift = [sum(Fraction(z[r]) * lattice[r][c] for r in range(d)) for c in range(d)]
        out.append(tuple(x + s for x, s in zip(p, shift)))
    return out
