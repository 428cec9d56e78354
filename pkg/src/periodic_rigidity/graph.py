"""Gain graphs with integer-lattice gains.

An edge ``(tail, head, gain)`` is the same undirected edge as
``(head, tail, -gain)``; every routine here treats the stored orientation as
a bookkeeping choice only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import ConnectivityError, InvalidWalkError, StructureError, TreeError
from .exact import vector_rank


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


class Edge(NamedTuple):
    tail: int
    head: int
    gain: tuple[int, ...]

    def reversed(self) -> Edge:
        return Edge(self.head, self.tail, _vneg(self.gain))

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


class WalkStep(NamedTuple):
    """Traverse edge ``edge`` forwards (``direction=+1``) or backwards (``-1``)."""

    edge: int
    direction: int = 1


@dataclass(frozen=True)
class GainSpace:
    generators: tuple[tuple[int, ...], ...]
    rank: int


@dataclass(frozen=True)
class GainGraph:
    d: int
    n: int
    edges: tuple[Edge, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise StructureError(f"dimension must be a positive integer, got {self.d!r}")
        if not isinstance(self.n, int) or self.n < 0:
            raise StructureError(f"vertex count must be a non-negative integer, got {self.n!r}")
        clean = []
        for k, e in enumerate(self.edges):
            try:
                tail, head, gain = e
            except (TypeError, ValueError):
                raise StructureError(f"edge {k} is not a (tail, head, gain) triple") from None
            gain = tuple(int(x) for x in gain)
            if len(gain) != self.d:
                raise StructureError(
                    f"edge {k} has a gain of length {len(gain)}, expected {self.d}"
                )
            for v in (tail, head):
                if not 0 <= v < self.n:
                    raise StructureError(f"edge {k} endpoint {v} outside [0, {self.n})")
            clean.append(Edge(int(tail), int(head), gain))
        object.__setattr__(self, "edges", tuple(clean))

    @classmethod
    def from_edges(cls, d: int, n: int, edges) -> GainGraph:
        return cls(d, n, tuple(edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def with_gains(self, gains: Sequence[Sequence[int]]) -> GainGraph:
        """Same base graph and orientations, new gains."""
        if len(gains) != len(self.edges):
            raise StructureError("one gain per edge is required")
        return GainGraph(
            self.d, self.n, tuple(Edge(e.tail, e.head, tuple(g)) for e, g in zip(self.edges, gains))
        )

    def subgraph(self, edge_indices) -> GainGraph:
        """Edge-induced subgraph on the same vertex labels."""
        return GainGraph(self.d, self.n, tuple(self.edges[k] for k in edge_indices))

    def without_edge(self, index: int) -> GainGraph:
        return self.subgraph(k for k in range(len(self.edges)) if k != index)

    def incidence(self):
        """``adj[v]`` lists ``(edge index, direction, neighbour)`` leaving ``v``."""
        adj = [[] for _ in range(self.n)]
        for k, e in enumerate(self.edges):
            adj[e.tail].append((k, 1, e.head))
            if not e.is_loop:
                adj[e.head].append((k, -1, e.tail))
        return adj

    def step_gain(self, step: WalkStep) -> tuple[int, ...]:
        g = self.edges[step.edge].gain
        return g if step.direction > 0 else _vneg(g)

    def oriented(self, step: WalkStep) -> Edge:
        e = self.edges[step.edge]
        return e if step.direction > 0 else e.reversed()


def zero(d: int) -> tuple[int, ...]:
    return (0,) * d


def components(graph: GainGraph, edge_indices=None) -> list[list[int]]:
    """Vertex sets of the connected components (restricted to ``edge_indices`` if given)."""
    parent = list(range(graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ks = range(graph.num_edges) if edge_indices is None else edge_indices
    for k in ks:
        e = graph.edges[k]
        a, b = find(e.tail), find(e.head)
        if a != b:
            parent[a] = b
    groups = {}
    for v in range(graph.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(graph: GainGraph) -> bool:
    return graph.n <= 1 or len(components(graph)) == 1


def require_connected(graph: GainGraph):
    if not is_connected(graph):
        raise ConnectivityError(
            f"graph has {len(components(graph))} connected components; a connected graph is required"
        )


def net_gain(graph: GainGraph, walk: Sequence[WalkStep]) -> tuple[int, ...]:
    """Sum of the signed gains along ``walk``."""
    total = zero(graph.d)
    at = None
    for i, step in enumerate(walk):
        step = WalkStep(*step) if not isinstance(step, WalkStep) else step
        if not 0 <= step.edge < graph.num_edges:
            raise IndexError(f"walk step {i} uses edge {step.edge}, graph has {graph.num_edges}")
        if step.direction not in (1, -1):
            raise InvalidWalkError(f"walk step {i} has direction {step.direction}")
        e = graph.oriented(step)
        if at is not None and e.tail != at:
            raise InvalidWalkError(f"walk step {i} starts at {e.tail} but the walk is at {at}")
        at = e.head
        total = _vadd(total, e.gain)
    return total


def bfs_tree(graph: GainGraph, root: int = 0) -> list[int]:
    """Breadth-first spanning tree edges, scanning lower edge indices first.

    This is the default spanning tree used throughout the package.  For a
    disconnected graph a spanning forest is returned.
    """
    adj = graph.incidence()
    seen = [False] * graph.n
    tree = []
    for start in [root] + list(range(graph.n)):
        if graph.n == 0 or seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for k, _, w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    tree.append(k)
                    queue.append(w)
    return sorted(tree)


def check_spanning_tree(graph: GainGraph, tree) -> list[int]:
    """Validate ``tree`` as a spanning tree of the (connected) graph; return it sorted."""
    require_connected(graph)
    tree = sorted(set(tree))
    for k in tree:
        if not 0 <= k < graph.num_edges:
            raise TreeError(f"tree edge {k} out of range")
    if len(tree) != max(graph.n - 1, 0):
        raise TreeError(f"a spanning tree needs {graph.n - 1} edges, got {len(tree)}")
    if len(components(graph, tree)) != 1 and graph.n > 0:
        raise TreeError("tree edges contain a cycle or do not span the graph")
    return tree


def tree_paths(graph: GainGraph, tree, root: int):
    """Map each vertex to the walk from ``root`` along ``tree``."""
    tree_set = set(tree)
    adj = graph.incidence()
    paths = {root: []}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for k, direction, w in adj[v]:
            if k in tree_set and w not in paths:
                paths[w] = paths[v] + [WalkStep(k, direction)]
                queue.append(w)
    return paths


def _reverse_walk(walk):
    return [WalkStep(s.edge, -s.direction) for s in reversed(walk)]


def reverse_walk(walk: Sequence[WalkStep]) -> list[WalkStep]:
    return _reverse_walk([WalkStep(*s) for s in walk])


def fundamental_cycles(graph: GainGraph, tree) -> list[list[WalkStep]]:
    """One closed walk per non-tree edge: the edge followed by the tree path back."""
    tree = check_spanning_tree(graph, tree)
    paths = tree_paths(graph, tree, 0)
    tree_set = set(tree)
    cycles = []
    for k, e in enumerate(graph.edges):
        if k in tree_set:
            continue
        # root -> tail, edge, head -> root
        walk = paths[e.tail] + [WalkStep(k, 1)] + _reverse_walk(paths[e.head])
        cycles.append(_cancel(walk))
    return cycles


def _cancel(walk):
    """Remove immediate back-tracking so cycles are reported without the root spur."""
    out = []
    for s in walk:
        if out and out[-1].edge == s.edge and out[-1].direction == -s.direction:
            out.pop()
        else:
            out.append(s)
    # rotate away a shared spur at the two ends
    while len(out) >= 2 and out[0].edge == out[-1].edge and out[0].direction == -out[-1].direction:
        out = out[1:-1]
    return out


def _cycle_gains_by_union_find(graph: GainGraph, edge_indices=None):
    """Net gains of a fundamental cycle system, computed with potentials.

    Each vertex carries the net gain of a path from its component root;
    an edge closing a cycle contributes ``pot(tail) + m - pot(head)``.
    """
    d = graph.d
    parent = list(range(graph.n))
    pot = [zero(d)] * graph.n  # gain of the path root -> v, relative to parent chain

    def find(x):
        # returns (root, gain from root to x)
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        root = x
        # compress
        for v in reversed(path):
            p = parent[v]
            if p != root:
                pot[v] = _vadd(pot[p], pot[v])
            parent[v] = root
        return root

    gens = []
    ks = range(graph.num_edges) if edge_indices is None else edge_indices
    for k in ks:
        e = graph.edges[k]
        ra, rb = find(e.tail), find(e.head)
        pa = pot[e.tail] if e.tail != ra else zero(d)
        pb = pot[e.head] if e.head != rb else zero(d)
        if ra == rb:
            gens.append(_vsub(_vadd(pa, e.gain), pb))
        else:
            # attach rb under ra so that pot(head) = pot(tail) + gain
            parent[rb] = ra
            pot[rb] = _vsub(_vadd(pa, e.gain), pb)
    return gens


def cycle_gains(graph: GainGraph, edge_indices=None) -> list[tuple[int, ...]]:
    """Net gains of a fundamental cycle system of the (sub)graph, any component count."""
    return _cycle_gains_by_union_find(graph, edge_indices)


def gain_space(graph: GainGraph, edge_indices=None) -> GainSpace:
    """Generators (cycle net gains) and rational rank of the gain space."""
    gens = tuple(cycle_gains(graph, edge_indices))
    return GainSpace(gens, vector_rank(list(gens)))


def gain_space_rank(graph: GainGraph, edge_indices=None) -> int:
    return vector_rank(cycle_gains(graph, edge_indices))


def align_orientations(g1: GainGraph, g2: GainGraph) -> list[tuple[int, ...]]:
    """Gains of ``g2`` re-expressed in ``g1``'s edge orientations.

    Loop edges admit both signs, so the sign matching ``g1`` is chosen when
    possible.
    """
    if g1.d != g2.d or g1.n != g2.n or g1.num_edges != g2.num_edges:
        raise StructureError("gain graphs do not share a base graph")
    out = []
    for k, (a, b) in enumerate(zip(g1.edges, g2.edges)):
        if (a.tail, a.head) == (b.tail, b.head):
            g = b.gain
            if a.is_loop and g != a.gain and _vneg(g) == a.gain:
                g = a.gain
            out.append(g)
        elif (a.tail, a.head) == (b.head, b.tail):
            out.append(_vneg(b.gain))
        else:
            raise StructureError(f"edge {k} joins different vertices in the two graphs")
    return out


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    offsets: tuple[tuple[int, ...], ...] | None = None
    cycle: list[WalkStep] | None = None
    gains: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self):
        return self.equivalent


def periodic_equivalent(g1: GainGraph, g2: GainGraph) -> Equivalence:
    """Decide whether ``n_e = m_e + l(head) - l(tail)`` for integer offsets ``l``.

    On success the offsets are returned (zero at the root of each component);
    otherwise a closed walk whose net gains differ is reported.
    """
    n_gains = align_orientations(g1, g2)
    d = g1.d
    offsets = [None] * g1.n
    adj = g1.incidence()
    tree_set = set()
    for start in range(g1.n):
        if offsets[start] is not None:
            continue
        offsets[start] = zero(d)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for k, direction, w in adj[v]:
                if offsets[w] is None:
                    diff = _vsub(n_gains[k], g1.edges[k].gain)
                    if direction < 0:
                        diff = _vneg(diff)
                    offsets[w] = _vadd(offsets[v], diff)
                    tree_set.add(k)
                    queue.append(w)
    for k, e in enumerate(g1.edges):
        if k in tree_set:
            continue
        expected = _vadd(e.gain, _vsub(offsets[e.head], offsets[e.tail]))
        if expected != n_gains[k] and not (
            e.is_loop and _vneg(n_gains[k]) == e.gain
        ):
            cycle = _closing_cycle(g1, tree_set, k)
            c1 = net_gain(g1, cycle)
            c2 = net_gain(g1.with_gains(n_gains), cycle)
            return Equivalence(False, cycle=cycle, gains=(c1, c2))
    return Equivalence(True, offsets=tuple(offsets))


def _closing_cycle(graph, tree_set, k):
    e = graph.edges[k]
    comp_root = next(v for v in components(graph) if e.tail in v)[0]
    paths = tree_paths(graph, tree_set, comp_root)
    return _cancel(paths[e.tail] + [WalkStep(k, 1)] + _reverse_walk(paths[e.head]))
