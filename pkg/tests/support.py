"""Small fixed instances and brute-force references shared by the test modules."""

from __future__ import annotations

import itertools

from pathreconf.graph import Graph, Model, SPInstance


def four_cycle(model: Model = Model.TJ, chord: bool = False) -> SPInstance:
    """s=0, t=3, middle vertices 1 and 2; ``chord`` joins 1 and 2."""
    edges = [(0, 1), (0, 2), (1, 3), (2, 3)] + ([(1, 2)] if chord else [])
    return SPInstance(Graph.from_edges(4, edges), 0, 3, (0, 1, 3), (0, 2, 3), model)


def four_cycle_pendant(model: Model = Model.TJ) -> SPInstance:
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4)])
    return SPInstance(g, 0, 3, (0, 1, 3), (0, 2, 3), model)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def brute_degeneracy(g: Graph) -> int:
    """Max over vertex subsets of the minimum degree of the induced subgraph."""
    best = 0
    for r in range(1, g.n + 1):
        for sub in itertools.combinations(range(g.n), r):
            s = set(sub)
            best = max(best, min(len(g.adj[v] & s) for v in sub))
    return best


def brute_fvs_size(g: Graph) -> int:
    from pathreconf.kernels._common import is_forest

    for r in range(g.n + 1):
        for sub in itertools.combinations(range(g.n), r):
            if is_forest(g, sub):
                return r
    raise AssertionError("unreachable")


def brute_treedepth(g: Graph, vertices: frozenset[int] | None = None) -> int:
    """Treedepth by trying every root of every component, no memo."""
    vs = frozenset(range(g.n)) if vertices is None else vertices
    if not vs:
        return 0
    comps = []
    left = set(vs)
    while left:
        stack = [left.pop()]
        comp = set(stack)
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in left:
                    left.discard(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    if len(comps) > 1:
        return max(brute_treedepth(g, c) for c in comps)
    return 1 + min(brute_treedepth(g, vs - {v}) for v in vs)


def brute_shortest_paths(g: Graph, s: int, t: int) -> set[tuple[int, ...]]:
    """All shortest st-paths by trying every vertex sequence of the right length."""
    k = g.bfs(s)[t]
    out = set()
    for mid in itertools.permutations([v for v in range(g.n) if v not in (s, t)], k - 1):
        path = (s, *mid, t)
        if all(g.has_edge(a, b) for a, b in zip(path, path[1:])):
            out.add(path)
    return out


def ladder(k: int) -> SPInstance:
    """Two disjoint st-paths of length ``k``; P runs along one, Q along the other."""
    a = list(range(2, k + 1))
    b = list(range(k + 1, 2 * k))
    s, t = 0, 1
    P = [s, *a, t]
    Q = [s, *b, t]
    edges = list(zip(P, P[1:])) + list(zip(Q, Q[1:]))
    return SPInstance(Graph.from_edges(2 * k, edges), s, t, tuple(P), tuple(Q), Model.TJ)


def corridor(k: int, width: int = 3) -> SPInstance:
    """A 4-cycle-rich head (layers 1-2 complete to each other) followed by a tree-like tail.

    P and Q differ only inside the head, so the tail tokens are frozen.
    """
    s, t = 0, 1
    layers = [[s]]
    n = 2
    for p in range(1, k):
        size = width if p <= 2 else 2
        layers.append(list(range(n, n + size)))
        n += size
    layers.append([t])
    edges = set()
    for p, (A, B) in enumerate(zip(layers, layers[1:])):
        if p <= 2:
            edges.update((min(u, v), max(u, v)) for u in A for v in B)
        else:
            # a zig-zag: every vertex keeps a forward and a backward neighbour, no cycles
            for i, v in enumerate(B):
                u = A[min(i, len(A) - 1)]
                edges.add((min(u, v), max(u, v)))
            if len(B) < len(A):
                for u in A[len(B):]:
                    edges.add((min(u, B[-1]), max(u, B[-1])))
    g = Graph.from_edges(n, sorted(edges))
    P = [layer[0] for layer in layers]
    Q = [layers[1][1], layers[2][1]]
    Q = [s, *Q, *P[3:]]
    return SPInstance(g, s, t, tuple(P), tuple(Q), Model.TJ)
