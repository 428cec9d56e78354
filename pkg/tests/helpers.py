"""Builders for the standard examples and slow-but-obvious oracles."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from math import comb
from pathlib import Path

from periodic_rigidity import GainGraph, OrbitFramework, Torus
from periodic_rigidity.orbitfile import read_path

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

E1_EDGES = [
    (0, 1, (0, 0)),
    (1, 2, (0, 0)),
    (2, 3, (0, 0)),
    (0, 3, (0, 0)),
    (0, 2, (-1, 0)),
    (0, 3, (0, 1)),
]
E1_POSITIONS = [
    (Fraction(1, 10), Fraction(1, 5)),
    (Fraction(7, 10), Fraction(1, 10)),
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(1, 5), Fraction(3, 5)),
]
ZIGZAG_POSITIONS = [(Fraction(3, 4), Fraction(1, 4)), (Fraction(1, 4), Fraction(3, 4))]

BANANA_ZERO_EDGES = [
    (2, 3), (3, 4), (4, 2), (1, 2), (1, 3), (1, 4), (0, 2), (0, 3), (0, 4),
    (5, 6), (6, 7), (7, 5), (1, 5), (1, 6), (1, 7), (0, 5), (0, 6), (0, 7),
]
BANANA_HUB_GAINS = [(0, 1, 0), (1, 0, 0), (0, 0, 1)]
DOUBLE_BANANAS_GENERIC_RANK = 19


def e1_graph() -> GainGraph:
    return GainGraph(2, 4, E1_EDGES)


def e1_framework() -> OrbitFramework:
    return OrbitFramework(e1_graph(), Torus.unit(2), E1_POSITIONS)


def zigzag_graph(second_gain=(1, 0)) -> GainGraph:
    return GainGraph(2, 2, [(0, 1, (0, 0)), (0, 1, second_gain)])


def parallel_triangle_graph() -> GainGraph:
    return GainGraph(2, 3, [(0, 1, (1, 2)), (1, 2, (0, 1)), (2, 0, (3, 1)), (2, 0, (1, -1))])


def double_bananas() -> GainGraph:
    edges = [(a, b, (0, 0, 0)) for a, b in BANANA_ZERO_EDGES]
    edges += [(0, 1, g) for g in BANANA_HUB_GAINS]
    return GainGraph(3, 8, edges)


def fixture(name: str):
    return read_path(FIXTURES / name)


# ---------------------------------------------------------------------------
# random instances


def random_connected_graph(rng, d, n, m, gain_range=2, loops=True):
    """Random spanning tree plus ``m - (n - 1)`` extra edges, random gains."""
    def gain():
        return tuple(rng.randint(-gain_range, gain_range) for _ in range(d))

    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v, gain()) if rng.random() < 0.5 else (v, u, gain()))
    while len(edges) < m:
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b and not loops:
            continue
        edges.append((a, b, gain()))
    rng.shuffle(edges)
    return GainGraph(d, n, edges)


def random_rational_positions(rng, n, d, denom=1009):
    pts = set()
    out = []
    while len(out) < n:
        p = tuple(Fraction(rng.randrange(denom), denom) for _ in range(d))
        if p not in pts:
            pts.add(p)
            out.append(p)
    return out


def random_framework(rng, d, n, m, **kwargs):
    g = random_connected_graph(rng, d, n, m, **kwargs)
    return OrbitFramework(g, Torus.unit(d), random_rational_positions(rng, n, d))


def random_invertible(rng, d, lo=-3, hi=3):
    while True:
        B = [[Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(d)] for _ in range(d)]
        if gauss_rank(B) == d:
            return B


# ---------------------------------------------------------------------------
# oracles


def gauss_rank(rows) -> int:
    """Textbook Gaussian elimination over Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def rigidity_rows_by_hand(F):
    """Rows written out directly from the defining formula."""
    d, n = F.d, F.n
    rows = []
    for e in F.graph.edges:
        shift = [sum(Fraction(e.gain[r]) * F.torus.L[r][c] for r in range(d)) for c in range(d)]
        diff = [F.positions[e.tail][c] - F.positions[e.head][c] - shift[c] for c in range(d)]
        row = [Fraction(0)] * (d * n)
        for c in range(d):
            row[d * e.tail + c] += diff[c]
            row[d * e.head + c] -= diff[c]
        rows.append(row)
    return rows


def dfs_gain_rank(g, edge_ids) -> tuple[int, int, int]:
    """(number of touched vertices, components, gain rank) of an edge subset.

    Potentials are assigned by depth-first search; each non-tree edge gives
    the net gain ``pot(tail) + m - pot(head)`` of its fundamental cycle.
    """
    adj = {}
    for k in edge_ids:
        e = g.edges[k]
        adj.setdefault(e.tail, []).append(k)
        adj.setdefault(e.head, []).append(k)
    pot = {}
    used = set()
    ncomp = 0
    for start in adj:
        if start in pot:
            continue
        ncomp += 1
        pot[start] = (0,) * g.d
        stack = [start]
        while stack:
            v = stack.pop()
            for k in adj[v]:
                if k in used:
                    continue
                e = g.edges[k]
                if e.tail == v and e.head not in pot:
                    pot[e.head] = tuple(a + b for a, b in zip(pot[v], e.gain))
                elif e.head == v and e.tail not in pot:
                    pot[e.tail] = tuple(a - b for a, b in zip(pot[v], e.gain))
                else:
                    continue
                used.add(k)
                stack.append(e.head if e.tail == v else e.tail)
    cycles = []
    for k in edge_ids:
        if k not in used:
            e = g.edges[k]
            cycles.append([a + m - b for a, m, b in zip(pot[e.tail], e.gain, pot[e.head])])
    return len(adj), ncomp, gauss_rank(cycles) if cycles else 0


def all_edge_subsets(g):
    for r in range(1, g.num_edges + 1):
        yield from combinations(range(g.num_edges), r)


def brute_maxwell(g) -> bool:
    d = g.d
    if g.num_edges != d * g.n - d:
        return False
    for Y in all_edge_subsets(g):
        nv, _, _ = dfs_gain_rank(g, Y)
        if len(Y) > d * nv - d:
            return False
    return True


def brute_gain_tight(g) -> bool:
    d = g.d
    for Y in all_edge_subsets(g):
        nv, _, k = dfs_gain_rank(g, Y)
        if len(Y) == d * nv - d and k < d - 1:
            return False
    return True


def literal_graded_bound(d, nv, k):
    return d * nv - comb(d + 1, 2) + sum(d - i for i in range(1, k + 1))


def motion_bound(d, nv, k):
    """Graded bound with the allowance for subsets on few vertices."""
    n_free = d - k
    s = min(nv - 1, n_free)
    return literal_graded_bound(d, nv, k) + comb(n_free - s, 2)


def brute_rank_graded(g, connected_only=True) -> bool:
    for Y in all_edge_subsets(g):
        nv, ncomp, k = dfs_gain_rank(g, Y)
        if connected_only and ncomp != 1:
            continue
        if len(Y) > motion_bound(g.d, nv, k):
            return False
    return True


def brute_tree_decomposition(g, d) -> bool:
    """Try every colouring of the edges with d colours."""
    if g.num_edges != d * (g.n - 1):
        return False
    for colours in product(range(d), repeat=g.num_edges):
        ok = True
        for c in range(d):
            ids = [k for k in range(g.num_edges) if colours[k] == c]
            if len(ids) != g.n - 1:
                ok = False
                break
            parent = list(range(g.n))

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            for k in ids:
                a, b = find(g.edges[k].tail), find(g.edges[k].head)
                if a == b:
                    ok = False
                    break
                parent[a] = b
            if not ok:
                break
        if ok:
            return True
    return False
