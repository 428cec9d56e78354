"""Combinatorial necessary conditions for generic rigidity on the fixed torus.

* periodic Maxwell counts, decided through a partition into ``d`` forests;
* gain-space tightness: tight subgraphs need a gain space of rank >= d - 1;
* rank-graded sparsity: ``|Y| <= d|V(Y)| - C(d+1, 2) + sum_{i<=k} (d - i)``
  with ``k`` the gain-space rank of ``Y``;
* decomposition into ``d`` edge-disjoint spanning trees and the unit-vector
  gain assignment built from it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import DomainError, NeedsBruteForceError, PeriodicRigidityError
from .exact import vector_rank
from .graph import Edge, GainGraph, components

DEFAULT_VERTEX_GATE = 12
DEFAULT_EDGE_GATE = 24
DEFAULT_SUBSET_BUDGET = 2_000_000


@dataclass(frozen=True)
class Violation:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    measured: int
    bound: int
    gain_rank: int | None = None


@dataclass
class CountReport:
    condition: str
    passed: bool
    violations: list[Violation] = field(default_factory=list)
    subsets_checked: int = 0

    def __bool__(self):
        return self.passed


def _finish(condition, violations, checked=0):
    violations = sorted(set(violations), key=lambda v: (len(v.vertices), v.vertices, v.edges))
    return CountReport(condition, not violations, violations, checked)


# --------------------------------------------------------------------------
# bookkeeping for subsets


def _edge_masks(g):
    return [(1 << e.tail) | (1 << e.head) for e in g.edges]


def _bits(mask):
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def _subset_stats(g, edge_subset):
    """(number of components, gain-space rank) of an edge subset."""
    d = g.d
    parent = {}
    pot = {}

    def find(x):
        if x not in parent:
            parent[x] = x
            pot[x] = (0,) * d
            return x
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        for v in reversed(path):
            p = parent[v]
            if p != x:
                pot[v] = tuple(a + b for a, b in zip(pot[p], pot[v]))
                parent[v] = x
        return x

    gens = []
    comps = 0
    for k in edge_subset:
        e = g.edges[k]
        for v in {e.tail, e.head}:
            if v not in parent:
                comps += 1
        ra, rb = find(e.tail), find(e.head)
        pa = pot[e.tail] if e.tail != ra else (0,) * d
        pb = pot[e.head] if e.head != rb else (0,) * d
        through = tuple(a + m - b for a, m, b in zip(pa, e.gain, pb))
        if ra == rb:
            if any(through):
                gens.append(through)
        else:
            parent[rb] = ra
            pot[rb] = through
            comps -= 1
    return comps, vector_rank(gens)


def _induced_by_vertex_sets(g, min_size=1):
    masks = _edge_masks(g)
    for S in range(1, 1 << g.n):
        size = bin(S).count("1")
        if size < min_size:
            continue
        induced = [k for k, m in enumerate(masks) if m & ~S == 0]
        yield S, size, induced


# --------------------------------------------------------------------------
# bounds


def fact_identity(d: int, k: int) -> bool:
    """Check ``C(d,2) - sum_{i=1}^{k} (d-i) == C(d-k,2)``."""
    if not (isinstance(d, int) and isinstance(k, int)) or k < 0 or d < k:
        raise DomainError(f"need 0 <= k <= d, got d={d}, k={k}")
    lhs = comb(d, 2) - sum(d - i for i in range(1, k + 1))
    return lhs == comb(d - k, 2)


def graded_bound(d: int, nverts: int, gain_rank: int) -> int:
    """``d|V(Y)| - C(d+1,2) + sum_{i=1}^{k} (d-i)``."""
    return d * nverts - comb(d + 1, 2) + sum(d - i for i in range(1, gain_rank + 1))


def small_support_allowance(d: int, nverts: int, gain_rank: int) -> int:
    """Rotations that act trivially on a subset spanning too few vertices.

    For ``nverts - 1 >= d - k`` this is zero and the graded bound applies
    unchanged.  Below that, the vertices cannot see every rotation of the
    complement of the gain space, and ``C(d - k - (nverts - 1), 2)`` of them
    are lost (a lone bar in 3-space is the basic case).
    """
    free = d - gain_rank
    seen = min(max(nverts - 1, 0), free)
    return comb(free - seen, 2)


def sparsity_bound(d: int, nverts: int, gain_rank: int) -> int:
    return graded_bound(d, nverts, gain_rank) + small_support_allowance(d, nverts, gain_rank)


def _min_sparsity_bound(d, nverts):
    return min(sparsity_bound(d, nverts, k) for k in range(d + 1))


# --------------------------------------------------------------------------
# forests, spanning trees


@dataclass(frozen=True)
class TreeDecomposition:
    trees: tuple[tuple[int, ...], ...]

    def __bool__(self):
        return True


@dataclass(frozen=True)
class DecompositionFailure:
    """Certificate that no decomposition exists."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    measured: int
    bound: int
    reason: str

    def __bool__(self):
        return False


class DecompositionError(PeriodicRigidityError):
    def __init__(self, failure: DecompositionFailure):
        super().__init__(failure.reason)
        self.failure = failure


def _forest_path(g, forest, a, b):
    """Edge indices of the path from a to b inside ``forest``, or None."""
    if a == b:
        return []
    adj = {}
    for k in forest:
        e = g.edges[k]
        adj.setdefault(e.tail, []).append((k, e.head))
        adj.setdefault(e.head, []).append((k, e.tail))
    prev = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for k, w in sorted(adj.get(v, ())):
            if w not in prev:
                prev[w] = (v, k)
                queue.append(w)
    if b not in prev:
        return None
    path = []
    v = b
    while prev[v] is not None:
        v, k = prev[v]
        path.append(k)
    return path


def partition_into_forests(g: GainGraph, d: int):
    """Greedy matroid-union augmentation over ``d`` graphic matroids.

    Edges are inserted in index order along shortest exchange paths.
    Returns ``(forests, None)`` on success or ``(partial forests, certificate)``
    where the certificate is a connected edge set with more than
    ``d(|V'| - 1)`` edges.
    """
    forests = [set() for _ in range(d)]
    for e_new in range(g.num_edges):
        label = {e_new: None}
        queue = deque([e_new])
        placed = False
        while queue and not placed:
            x = queue.popleft()
            ex = g.edges[x]
            for k in range(d):
                if x in forests[k]:
                    continue
                path = _forest_path(g, forests[k], ex.tail, ex.head)
                if path is None:
                    forests[k].add(x)
                    cur = x
                    while label[cur] is not None:
                        pred, fk = label[cur]
                        forests[fk].remove(cur)
                        forests[fk].add(pred)
                        cur = pred
                    placed = True
                    break
                for y in sorted(path):
                    if y not in label:
                        label[y] = (x, k)
                        queue.append(y)
        if not placed:
            return forests, _overcount_certificate(g, d, list(label))
    return forests, None


def _overcount_certificate(g, d, labelled):
    """A component of the labelled edge set with ``|E'| > d(|V'| - 1)``.

    Each forest spans the labelled set, so ``d * rank = |labelled| - 1`` and
    one component must be over-counted.
    """
    for comp in components(g, labelled):
        vs = set(comp)
        es = [k for k in labelled if g.edges[k].tail in vs]
        if es and len(es) > d * (len(vs) - 1):
            return DecompositionFailure(
                tuple(sorted(vs)), tuple(sorted(es)), len(es), d * (len(vs) - 1),
                "edge subset exceeds d(|V'|-1)",
            )
    raise AssertionError("forest partition failed without an over-counted component")


def tree_decomposition(g: GainGraph, d: int | None = None):
    """Split the edges into ``d`` edge-disjoint spanning trees, or certify why not."""
    d = g.d if d is None else d
    target = d * (g.n - 1)
    if g.num_edges != target:
        return DecompositionFailure(
            tuple(range(g.n)), tuple(range(g.num_edges)), g.num_edges, target,
            f"|E| = {g.num_edges} but d|V| - d = {target}",
        )
    forests, failure = partition_into_forests(g, d)
    if failure is not None:
        return failure
    return TreeDecomposition(tuple(tuple(sorted(f)) for f in forests))


def synthesize_constructive_gains(g: GainGraph, d: int | None = None) -> GainGraph:
    """Give every edge of the i-th spanning tree the i-th unit gain.

    Edges are oriented from the lower to the higher vertex id.
    """
    d = g.d if d is None else d
    dec = tree_decomposition(g, d)
    if not dec:
        raise DecompositionError(dec)
    gain_of = {}
    for i, tree in enumerate(dec.trees):
        unit = tuple(int(c == i) for c in range(d))
        for k in tree:
            gain_of[k] = unit
    edges = []
    for k, e in enumerate(g.edges):
        lo, hi = sorted((e.tail, e.head))
        edges.append(Edge(lo, hi, gain_of[k]))
    return GainGraph(d, g.n, tuple(edges))


# --------------------------------------------------------------------------
# the checks


def _densest_overcount(g, d):
    best = None
    for S, size, induced in _induced_by_vertex_sets(g):
        excess = len(induced) - (d * size - d)
        if excess > 0 and (best is None or excess > best[0]):
            best = (excess, S, induced, size)
    if best is None:
        return None
    _, S, induced, size = best
    return Violation(tuple(_bits(S)), tuple(induced), len(induced), d * size - d)


def maxwell_check(g: GainGraph, brute_force: bool | None = None, vertex_gate: int = DEFAULT_VERTEX_GATE) -> CountReport:
    """``|E| = d|V| - d`` and ``|E'| <= d|V'| - d`` for every subgraph.

    The subgraph inequality holds exactly when the edges split into ``d``
    forests.  With brute force on (default: when ``|V| <= vertex_gate``) an
    offending subgraph is replaced by the densest one.
    """
    d = g.d
    target = d * g.n - d
    violations = []
    if g.num_edges != target:
        violations.append(Violation(tuple(range(g.n)), tuple(range(g.num_edges)), g.num_edges, target))
    _, failure = partition_into_forests(g, d)
    if failure is not None:
        if brute_force is None:
            brute_force = g.n <= vertex_gate
        dense = _densest_overcount(g, d) if brute_force else None
        if dense is None:
            dense = Violation(failure.vertices, failure.edges, failure.measured, failure.bound)
        violations.append(dense)
    return _finish("maxwell", violations)


def _check_gate(name, value, gate, what):
    if gate is not None and value > gate:
        raise NeedsBruteForceError(
            f"{name} enumerates subsets by brute force; {what} = {value} exceeds the gate {gate}",
            gate,
        )


def gain_tightness_check(g: GainGraph, vertex_gate: int | None = DEFAULT_VERTEX_GATE,
                         budget: int | None = DEFAULT_SUBSET_BUDGET) -> CountReport:
    """Every non-empty edge set with ``|E'| = d|V(E')| - d`` has gain rank >= d - 1."""
    d = g.d
    _check_gate("gain_tightness_check", g.n, vertex_gate, "|V|")
    masks = _edge_masks(g)
    plan = []
    for S, size, induced in _induced_by_vertex_sets(g, min_size=2):
        t = d * size - d
        if len(induced) >= t > 0:
            plan.append((S, size, induced, t))
    total = sum(comb(len(ind), t) for _, _, ind, t in plan)
    if budget is not None and total > budget:
        raise NeedsBruteForceError(
            f"gain_tightness_check would visit {total} subsets (budget {budget})", budget
        )
    violations = []
    checked = 0
    for S, size, induced, t in plan:
        for Y in combinations(induced, t):
            cover = 0
            for k in Y:
                cover |= masks[k]
            if cover != S:
                continue
            checked += 1
            _, k_rank = _subset_stats(g, Y)
            if k_rank < d - 1:
                violations.append(Violation(tuple(_bits(S)), Y, t, d - 1, k_rank))
    return _finish("gain_tightness", violations, checked)


def rank_graded_sparsity_check(g: GainGraph, vertex_gate: int | None = DEFAULT_VERTEX_GATE,
                               edge_gate: int | None = DEFAULT_EDGE_GATE,
                               budget: int | None = DEFAULT_SUBSET_BUDGET,
                               connected_only: bool = True) -> CountReport:
    """Check the rank-graded sparsity inequality on every (connected) edge subset.

    Subsets whose size cannot exceed the smallest bound for their vertex set
    are skipped without enumeration.  The bound used is
    :func:`sparsity_bound`, which equals the graded bound whenever the subset
    touches at least ``d - k + 1`` vertices.
    """
    d = g.d
    _check_gate("rank_graded_sparsity_check", g.num_edges, edge_gate, "|E|")
    _check_gate("rank_graded_sparsity_check", g.n, vertex_gate, "|V|")
    masks = _edge_masks(g)
    plan = []
    for S, size, induced in _induced_by_vertex_sets(g):
        floor_bound = _min_sparsity_bound(d, size)
        if len(induced) > floor_bound:
            plan.append((S, size, induced, max(floor_bound + 1, 1)))
    total = sum(
        comb(len(ind), s) for _, _, ind, lo in plan for s in range(lo, len(ind) + 1)
    )
    if budget is not None and total > budget:
        raise NeedsBruteForceError(
            f"rank_graded_sparsity_check would visit {total} subsets (budget {budget})", budget
        )
    violations = []
    checked = 0
    for S, size, induced, lo in plan:
        for s in range(lo, len(induced) + 1):
            for Y in combinations(induced, s):
                cover = 0
                for k in Y:
                    cover |= masks[k]
                if cover != S:
                    continue
                ncomp, k_rank = _subset_stats(g, Y)
                if connected_only and ncomp != 1:
                    continue
                checked += 1
                bound = sparsity_bound(d, size, k_rank)
                if s > bound:
                    violations.append(Violation(tuple(_bits(S)), Y, s, bound, k_rank))
    return _finish("rank_graded_sparsity", violations, checked)
