"""Modular partitions and the modular-width solver.

A module is a vertex set whose members have the same neighbours outside
it. If s and t lie in different maximal modules and are at distance at
least 3, a shortest path uses at most one vertex per module and every
module sits at a single distance from s. The solver either recurses into
the module holding both s and t or reduces the instance to one with a
bounded number of vertices per module and hands that to the oracle.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from ..graph import Graph, Model, SPInstance, layered_view, prune_to_shortest_dag
from ..solver import SolveResult, oracle_solve
from ._common import relabel


@dataclass(frozen=True)
class ModularPartition:
    """Maximal modules of a graph and the quotient relation between them.

    ``kind`` is ``"parallel"`` (modules are the components), ``"series"``
    (modules are the co-components) or ``"prime"``. ``prime`` is set when
    every module is a single vertex.
    """

    modules: tuple[frozenset[int], ...]
    quotient_edges: frozenset[tuple[int, int]]
    kind: str
    prime: bool = False

    def module_of(self) -> dict[int, int]:
        return {v: i for i, M in enumerate(self.modules) for v in M}


def _components(n: int, adj: list[int], mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        comp, frontier = low, low
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = adj[v] & mask & ~comp
            comp |= new
            frontier |= new
        out.append(comp)
        mask &= ~comp
    return out


def _bits(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def smallest_module(g: Graph, seed: set[int]) -> frozenset[int]:
    """Least module containing ``seed``: keep absorbing vertices that split it."""
    M = set(seed)
    changed = True
    while changed:
        changed = False
        for x in range(g.n):
            if x in M:
                continue
            hit = len(g.adj[x] & M)
            if 0 < hit < len(M):
                M.add(x)
                changed = True
    return frozenset(M)


def is_module(g: Graph, M: frozenset[int]) -> bool:
    return all(len(g.adj[x] & M) in (0, len(M)) for x in range(g.n) if x not in M)


def modular_partition(g: Graph) -> ModularPartition:
    """Partition into maximal proper modules.

    Disconnected graphs split into components, graphs with a disconnected
    complement into co-components; otherwise two vertices share a part
    exactly when their least common module is not the whole vertex set.
    """
    if g.n < 2:
        raise ValueError("modular partition needs at least two vertices")
    full = (1 << g.n) - 1
    adj = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    comps = _components(g.n, adj, full)
    if len(comps) > 1:
        modules = tuple(_bits(c) for c in comps)
        kind = "parallel"
    else:
        co = [full & ~adj[v] & ~(1 << v) for v in range(g.n)]
        cocomps = _components(g.n, co, full)
        if len(cocomps) > 1:
            modules = tuple(_bits(c) for c in cocomps)
            kind = "series"
        else:
            part: list[int | None] = [None] * g.n
            groups: list[set[int]] = []
            for u in range(g.n):
                if part[u] is not None:
                    continue
                part[u] = len(groups)
                groups.append({u})
                for v in range(u + 1, g.n):
                    if part[v] is None and len(smallest_module(g, {u, v})) < g.n:
                        part[v] = part[u]
                        groups[-1].add(v)
            modules = tuple(frozenset(grp) for grp in groups)
            kind = "prime"
    quotient = set()
    for i, j in itertools.combinations(range(len(modules)), 2):
        links = {w in g.adj[v] for v in modules[i] for w in modules[j]}
        if len(links) != 1:
            raise AssertionError(f"parts {i} and {j} are neither fully joined nor disjoint")
        if True in links:
            quotient.add((i, j))
    for M in modules:
        if not is_module(g, M):
            raise AssertionError("a part of the partition is not a module")
    prime = kind == "prime" and all(len(M) == 1 for M in modules)
    return ModularPartition(modules, frozenset(quotient), kind, prime)


def max_path_check_mw(g: Graph, w: int) -> tuple[int, int, int] | None:
    """A pair ``(u, v, dist)`` with ``dist > w``, or ``None`` if all distances fit."""
    for u in range(g.n):
        for v, d in enumerate(g.bfs(u)):
            if d is not None and d > w:
                return u, v, d
    return None


def modular_solve(inst: SPInstance, w: int, state_cap: int = 50_000) -> SolveResult:
    """Exact answer and minimum length for graphs of modular width at most ``w``.

    ``state_cap`` bounds the number of shortest paths the oracle may list at
    the leaves of the recursion.
    """
    res = _modular(inst, w, state_cap, depth=0)
    res.stats["method"] = "modular"
    return res


def _modular(inst: SPInstance, w: int, cap: int, depth: int) -> SolveResult:
    if inst.graph.n <= w or inst.k <= 2:
        res = oracle_solve(inst, cap)
        res.stats["recursion_depth"] = depth
        return res
    base, pcert = prune_to_shortest_dag(inst)
    if base.graph.n <= w:
        return _lift(oracle_solve(base, cap), pcert.vertex_map, depth)
    part = modular_partition(base.graph)
    if part.prime or len(part.modules) > w:
        raise ValueError("width exceeded")
    assert part.kind == "prime", "after pruning, s and t at distance >= 3 leave no series or parallel split"
    where = part.module_of()
    ms, mt = where[base.s], where[base.t]
    if ms == mt:
        # a path leaving the module would reach t in two steps
        M = sorted(part.modules[ms])
        sub, old = relabel(base, M)
        res = _modular(sub, w, cap, depth + 1)
        return _lift(res, {i: pcert.vertex_map[o] for i, o in enumerate(old)}, depth)

    view = layered_view(base.graph, base.s, base.t)
    for M in part.modules:
        if len({view.dist_s[v] for v in M}) != 1:
            raise AssertionError("a module meets two different positions")
    if base.model is Model.TJ:
        res = _solve_tj(base, part, cap)
    else:
        res = _solve_ts(base, part, cap)
    return _lift(res, pcert.vertex_map, depth)


def _lift(res: SolveResult, vmap: dict, depth: int) -> SolveResult:
    if res.moves is not None:
        res.moves = [(p, vmap[v]) for p, v in res.moves]
    res.stats.setdefault("recursion_depth", depth)
    return res


def _collapse(inst: SPInstance, part: ModularPartition, keep_fixed: set[int]) -> list[int]:
    """Per module: the vertices in ``keep_fixed``, or a single representative."""
    keep = []
    for M in part.modules:
        own = sorted(M & keep_fixed)
        keep.extend(own if own else [min(M)])
    return keep


def _solve_tj(inst: SPInstance, part: ModularPartition, cap: int) -> SolveResult:
    # same-position edges never matter for jumps; without them a module is a set of false twins
    same = [(u, v) for M in part.modules for u in M for v in inst.graph.adj[u] if v in M and u < v]
    keep = _collapse(inst, part, set(inst.P) | set(inst.Q))
    aux, old = relabel(inst, keep, drop_edges=same)
    res = oracle_solve(aux, cap)
    res.stats["aux_vertices"] = aux.graph.n
    return _lift(res, dict(enumerate(old)), 0)


def _inner_route(inst: SPInstance, M: frozenset[int], a: int, b: int) -> list[int] | None:
    """Shortest a-b walk inside G[M], as the list of vertices after ``a``."""
    parent = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            route = []
            while u != a:
                route.append(u)
                u = parent[u]
            return route[::-1]
        for x in inst.graph.adj[u]:
            if x in M and x not in parent:
                parent[x] = u
                queue.append(x)
    return None


def _solve_ts(inst: SPInstance, part: ModularPartition, cap: int) -> SolveResult:
    """Guess which tokens stay inside their module; the others never slide within one.

    A token that leaves its module can skip every slide inside a module,
    because the modules it moves between are fully joined. A staying token
    only needs its own module, whose vertices all see the same neighbours,
    so its moves can be done first.
    """
    where = part.module_of()
    k = inst.k
    candidates = [p for p in range(1, k) if where[inst.P[p]] == where[inst.Q[p]]]
    same = [(u, v) for M in part.modules for u in M for v in inst.graph.adj[u] if v in M and u < v]
    view = layered_view(inst.graph, inst.s, inst.t)
    best: SolveResult | None = None
    unknown = False
    guesses = 0
    for r in range(len(candidates) + 1):
        for stay in itertools.combinations(candidates, r):
            routes = {}
            for p in stay:
                route = _inner_route(inst, part.modules[where[inst.P[p]]], inst.P[p], inst.Q[p])
                if route is None:
                    break
                routes[p] = route
            else:
                guesses += 1
                pinned = {v for p in stay for v in view.layers[p] if v != inst.P[p]}
                Q = list(inst.Q)
                for p in stay:
                    Q[p] = inst.P[p]
                fixed = (set(inst.P) | set(Q)) - pinned
                keep = [v for v in _collapse(inst, part, fixed) if v not in pinned]
                aux, old = relabel(inst, keep, drop_edges=same, Q=Q)
                res = oracle_solve(aux, cap)
                if res.reachable is None:
                    unknown = True
                    continue
                if not res.reachable:
                    continue
                pre = [(p, v) for p in stay for v in routes[p]]
                moves = pre + [(p, old[v]) for p, v in res.moves]
                if best is None or len(moves) < best.length:
                    best = SolveResult(True, len(moves), moves, {"stayers": list(stay)})
    if best is not None and not unknown:
        best.stats["guesses"] = guesses
        return best
    if unknown:
        return SolveResult(None, stats={"guesses": guesses, "capped": True})
    return SolveResult(False, stats={"guesses": guesses})
