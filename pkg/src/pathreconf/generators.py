"""Seeded random instance families used by the fuzz suites, demos and the CLI."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, Model, SPInstance, layered_view


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    """A random spanning tree plus independent extra edges with probability ``p``."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def random_shortest_path(rng: random.Random, g: Graph, s: int, t: int) -> tuple[int, ...]:
    """Shortest st-path built by picking a uniform forward neighbour at each step."""
    view = layered_view(g, s, t)
    path = [s]
    for p in range(1, view.k + 1):
        choices = sorted(w for w in g.adj[path[-1]] if view.dist_s[w] == p and view.on_shortest_path(w))
        path.append(rng.choice(choices))
    return tuple(path)


def instance_on(
    rng: random.Random,
    g: Graph,
    model: Model,
    min_dist: int = 2,
    budget: int | None = None,
    far: bool = False,
    tries: int = 4,
) -> SPInstance | None:
    """Random s, t at distance at least ``min_dist`` with random shortest P and Q.

    ``far`` restricts s, t to pairs at maximum distance. Q is redrawn up to
    ``tries`` times while it equals P.
    """
    pairs = []
    for s in range(g.n):
        dist = g.bfs(s)
        pairs += [(dist[t], s, t) for t in range(g.n) if dist[t] is not None and dist[t] >= min_dist]
    if not pairs:
        return None
    if far:
        top = max(d for d, _, _ in pairs)
        pairs = [x for x in pairs if x[0] == top]
    _, s, t = rng.choice(pairs)
    P = random_shortest_path(rng, g, s, t)
    Q = random_shortest_path(rng, g, s, t)
    for _ in range(tries):
        if Q != P:
            break
        Q = random_shortest_path(rng, g, s, t)
    return SPInstance(g, s, t, P, Q, model, budget)


def random_instance(rng: random.Random, n: int, model: Model, p: float | None = None) -> SPInstance:
    """Random connected graph on ``n`` vertices with a random instance on it.

    Half the time s and t are a farthest pair, which gives longer paths.
    """
    while True:
        g = random_connected_graph(rng, n, rng.uniform(0.15, 0.5) if p is None else p)
        inst = instance_on(rng, g, model, far=rng.random() < 0.5)
        if inst is not None:
            return inst


def layered_instance(
    rng: random.Random,
    k: int,
    width: int,
    density: float,
    model: Model,
    same_layer: float = 0.2,
    noise: int = 0,
) -> SPInstance:
    """Instance whose shortest-path DAG is a random layered graph.

    Layers 1..k-1 get between 1 and ``width`` vertices; consecutive layers are
    joined with probability ``density`` (every vertex keeps at least one edge
    each way), same-layer pairs with probability ``same_layer``. ``noise``
    pendant vertices hang off random vertices and lie on no shortest path.
    """
    layers = [[0]]
    n = 1
    for _ in range(1, k):
        size = rng.randint(1, width)
        layers.append(list(range(n, n + size)))
        n += size
    layers.append([n])
    n += 1
    edges = set()

    def add(u: int, v: int) -> None:
        edges.add((min(u, v), max(u, v)))

    for A, B in zip(layers, layers[1:]):
        for u in A:
            for v in B:
                if rng.random() < density:
                    add(u, v)
        for u in A:
            if not any((min(u, v), max(u, v)) in edges for v in B):
                add(u, rng.choice(B))
        for v in B:
            if not any((min(u, v), max(u, v)) in edges for u in A):
                add(rng.choice(A), v)
    for layer in layers[1:-1]:
        for i, u in enumerate(layer):
            for v in layer[i + 1 :]:
                if rng.random() < same_layer:
                    add(u, v)
    for _ in range(noise):
        add(n, rng.randrange(n))
        n += 1
    g = Graph.from_edges(n, sorted(edges))
    s, t = 0, layers[-1][0]
    return SPInstance(g, s, t, random_shortest_path(rng, g, s, t), random_shortest_path(rng, g, s, t), model)


@dataclass(frozen=True)
class ClusterSample:
    instance: SPInstance
    modulator: frozenset[int]


def cluster_modulator_graph(rng: random.Random, r: int, cliques: int, max_clique: int, model: Model) -> ClusterSample | None:
    """Disjoint cliques plus ``r`` modulator vertices with random attachments.

    Cliques are drawn from a few templates so that many of them share a type,
    which is the case the kernel compresses.
    """
    C = list(range(r))
    n = r
    edges = set()
    for i in range(r):
        for j in range(i + 1, r):
            if rng.random() < 0.4:
                edges.add((i, j))
    templates = []
    for _ in range(rng.randint(1, 3)):
        size = rng.randint(1, max_clique)
        templates.append([frozenset(c for c in C if rng.random() < 0.5) for _ in range(size)])
    for _ in range(cliques):
        members = list(range(n, n + len(tpl := rng.choice(templates))))
        n += len(members)
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                edges.add((u, v))
            for c in tpl[i]:
                edges.add((c, u))
    g = Graph.from_edges(n, sorted(edges))
    comp = _component_of(g, rng.randrange(n))
    sub, old = g.induced(comp)
    inst = instance_on(rng, sub, model, min_dist=2)
    if inst is None:
        return None
    return ClusterSample(inst, frozenset(i for i, v in enumerate(old) if v in C))


def _component_of(g: Graph, v: int) -> list[int]:
    dist = g.bfs(v)
    return [u for u in range(g.n) if dist[u] is not None]


@dataclass(frozen=True)
class TreedepthSample:
    instance: SPInstance
    parent: tuple[int | None, ...]


def bounded_treedepth_graph(rng: random.Random, n: int, depth: int, p: float, model: Model) -> TreedepthSample | None:
    """Random rooted tree of height ``depth`` with edges only along ancestor chains.

    Subtrees are copied now and then so that equivalent flaps appear.
    """
    parent: list[int | None] = [None]
    level = [1]
    edges = set()
    while len(parent) < n:
        cands = [v for v in range(len(parent)) if level[v] < depth]
        if not cands:
            break
        u = rng.choice(cands)
        if rng.random() < 0.3 and any(parent[c] == u for c in range(len(parent))):
            # duplicate an existing child subtree of u with the same ancestor edges
            kids = [c for c in range(len(parent)) if parent[c] == u]
            src = rng.choice(kids)
            sub = _subtree(parent, src)
            if len(parent) + len(sub) > n:
                continue
            copy = {}
            for v in sub:
                copy[v] = len(parent)
                parent.append(copy[parent[v]] if v != src else u)
                level.append(level[v])
            snapshot = list(edges)
            for v in sub:
                for a, b in snapshot:
                    if a == v and b not in copy:
                        edges.add((min(copy[v], b), max(copy[v], b)))
                    elif b == v and a not in copy:
                        edges.add((min(copy[v], a), max(copy[v], a)))
                    elif a == v and b in copy:
                        edges.add((min(copy[a], copy[b]), max(copy[a], copy[b])))
            continue
        v = len(parent)
        parent.append(u)
        level.append(level[u] + 1)
        edges.add((u, v))
        a = parent[u]
        while a is not None:
            if rng.random() < p:
                edges.add((a, v))
            a = parent[a]
    g = Graph.from_edges(len(parent), sorted(edges))
    inst = instance_on(rng, g, model, min_dist=2)
    if inst is None:
        return None
    return TreedepthSample(inst, tuple(parent))


def _subtree(parent: list[int | None], root: int) -> list[int]:
    out = [root]
    for v in range(root + 1, len(parent)):
        a = parent[v]
        while a is not None and a != root:
            a = parent[a]
        if a == root:
            out.append(v)
    return out


def module_substitution_graph(rng: random.Random, n: int, w: int) -> Graph:
    """Random graph of modular width at most ``w``.

    Built top-down: a quotient graph on at most ``w`` parts is drawn (complete,
    edgeless, a path or arbitrary), and each part is filled recursively.
    """
    edges: set[tuple[int, int]] = set()

    def build(vertices: list[int]) -> None:
        if len(vertices) == 1:
            return
        parts = rng.randint(2, min(w, len(vertices)))
        rng.shuffle(vertices)
        cuts = sorted(rng.sample(range(1, len(vertices)), parts - 1))
        groups = [vertices[a:b] for a, b in zip([0] + cuts, cuts + [len(vertices)])]
        kind = rng.random()
        density = 1.0 if kind < 0.15 else 0.0 if kind < 0.3 else rng.uniform(0.25, 0.6)
        chain = 0.3 <= kind < 0.5
        for i in range(parts):
            for j in range(i + 1, parts):
                if (j == i + 1) if chain else rng.random() < density:
                    for u in groups[i]:
                        for v in groups[j]:
                            edges.add((min(u, v), max(u, v)))
        for grp in groups:
            build(grp)

    build(list(range(n)))
    return Graph.from_edges(n, sorted(edges))


def modular_instance(rng: random.Random, n: int, w: int, model: Model, min_dist: int = 2) -> SPInstance | None:
    """Instance on the largest connected component of a module-substitution graph."""
    g = module_substitution_graph(rng, n, w)
    comps = []
    left = set(range(n))
    while left:
        comps.append(_component_of(g, min(left)))
        left -= set(comps[-1])
    sub, _ = g.induced(max(comps, key=len))
    return instance_on(rng, sub, model, min_dist=min_dist, far=rng.random() < 0.5)
