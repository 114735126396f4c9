"""Feedback-vertex-set compression of the shortest-path layers.

If layers p-1, p and p+1 contain no vertex of F they induce a forest, so
the token at position p can never move: a move from u to w would need a
vertex of layer p-1 and one of layer p+1 adjacent to both, which closes a
4-cycle. Such a position is frozen; the other vertices of its layer are
deleted. Two consecutive single-vertex layers (s and t included) are then
merged into one vertex, which shortens every path by one without changing
what the other tokens can do.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from ..graph import Graph, KernelCertificate, SPInstance, Verdict, identity_certificate, layered_view, prune_to_shortest_dag
from ._common import compose, is_forest, relabel


def compute_fvs(g: Graph, size_limit: int) -> frozenset[int] | None:
    """Minimum feedback vertex set if one of size at most ``size_limit`` exists."""
    for size in range(size_limit + 1):
        found = _fvs_branch(g, frozenset(), size)
        if found is not None:
            return found
    return None


def _shortest_cycle(g: Graph, removed: frozenset[int]) -> list[int] | None:
    alive = [v for v in range(g.n) if v not in removed]
    # strip degree <= 1 vertices, they lie on no cycle
    deg = {v: sum(1 for w in g.adj[v] if w not in removed) for v in alive}
    gone = set(removed)
    queue = deque(v for v in alive if deg[v] <= 1)
    while queue:
        v = queue.popleft()
        if v in gone:
            continue
        gone.add(v)
        for w in g.adj[v]:
            if w not in gone:
                deg[w] -= 1
                if deg[w] <= 1:
                    queue.append(w)
    best = None
    for root in alive:
        if root in gone:
            continue
        parent = {root: None}
        depth = {root: 0}
        q = deque([root])
        while q:
            u = q.popleft()
            if best is not None and 2 * depth[u] + 1 >= len(best):
                break
            for w in g.adj[u]:
                if w in gone or w == parent[u]:
                    continue
                if w in depth:
                    a, b = [u], [w]
                    while a[-1] is not None:
                        a.append(parent[a[-1]])
                    while b[-1] is not None:
                        b.append(parent[b[-1]])
                    a, b = a[:-1], b[:-1]
                    common = set(a) & set(b)
                    cyc = [x for x in a if x not in common] + [x for x in b if x not in common]
                    lca = next(x for x in a if x in common)
                    cyc.append(lca)
                    if best is None or len(cyc) < len(best):
                        best = cyc
                    continue
                parent[w] = u
                depth[w] = depth[u] + 1
                q.append(w)
    return best


def _fvs_branch(g: Graph, removed: frozenset[int], budget: int) -> frozenset[int] | None:
    cycle = _shortest_cycle(g, removed)
    if cycle is None:
        return removed
    if budget == 0:
        return None
    for v in sorted(cycle):
        found = _fvs_branch(g, removed | {v}, budget - 1)
        if found is not None:
            return found
    return None


def fvs_reduce(inst: SPInstance, F: Iterable[int]) -> tuple[SPInstance, KernelCertificate]:
    """Freeze and contract layers far from ``F``; ``F`` must be a feedback vertex set.

    On a ``Reduced`` verdict the result satisfies ``k <= max(1, 4 * len(F))``.
    The certificate notes carry the feedback vertex set of the reduced graph.
    """
    F = set(F)
    if not is_forest(inst.graph, F):
        raise ValueError("F is not a feedback vertex set (cycle found after deletion)")
    if inst.k <= 2:
        return inst, identity_certificate("fvs", inst)
    cur, cert = prune_to_shortest_dag(inst)
    F = {v for v in range(cur.graph.n) if cert.vertex_map[v] in F}
    k0 = cur.k
    changed = False
    while True:
        view = layered_view(cur.graph, cur.s, cur.t)
        k = cur.k
        marked = [any(v in F for v in layer) for layer in view.layers]
        frozen = [
            p for p in range(1, k) if not (marked[p - 1] or marked[p] or marked[p + 1]) and len(view.layers[p]) > 1
        ]
        for p in frozen:
            layers = view.layers[p - 1] + view.layers[p] + view.layers[p + 1]
            sub, _ = cur.graph.induced(layers)
            assert is_forest(sub), "F-free layers must induce a forest"
            if cur.P[p] != cur.Q[p]:
                notes = {"frozen_position": cert.position_map[p], "reason": "P and Q differ at a frozen position"}
                return inst, KernelCertificate("fvs", Verdict.DECIDED_NO, notes=notes)
        if frozen:
            drop = {v for p in frozen for v in view.layers[p] if v != cur.P[p]}
            keep = [v for v in range(cur.graph.n) if v not in drop]
            nxt, old = relabel(cur, keep)
            nxt, pr = prune_to_shortest_dag(nxt)
            step = KernelCertificate(
                "fvs", Verdict.REDUCED, {v: old[pr.vertex_map[v]] for v in range(nxt.graph.n)}, tuple(range(k + 1))
            )
            F = {v for v in range(nxt.graph.n) if step.vertex_map[v] in F}
            cert = compose(cert, step, "fvs", Verdict.REDUCED, {})
            cur = nxt
            changed = True
            continue
        pair = next((p for p in range(k) if len(view.layers[p]) == len(view.layers[p + 1]) == 1), None)
        if pair is None or k == 1:
            break
        cur, step, F = _merge(cur, view, pair, F)
        cert = compose(cert, step, "fvs", Verdict.REDUCED, {})
        changed = True
    if not changed:
        return inst, identity_certificate("fvs", inst)
    notes = {"k_before": inst.k, "k_after": cur.k, "pruned_k": k0, "F": sorted(F)}
    cert.notes = notes
    return cur, cert


def _merge(inst: SPInstance, view, p: int, F: set[int]):
    """Contract the single vertices of layers p and p+1 into one vertex."""
    (u,), (v,) = view.layers[p], view.layers[p + 1]
    g = inst.graph
    k = inst.k
    keep = [x for x in range(g.n) if x != v]
    # u takes over v's forward neighbours; layer order shifts down by one
    extra = [(u, w) for w in g.adj[v] if view.layer_of(w) == p + 2]
    P = [x for x in inst.P if x != v]
    Q = [x for x in inst.Q if x != v]
    t = inst.t if inst.t != v else u
    base = SPInstance(inst.graph, inst.s, t, inst.P, inst.Q, inst.model, inst.budget)
    reduced, old = relabel(base, keep, extra, P=P, Q=Q)
    positions = tuple(q if q <= p else q + 1 for q in range(k))
    vmap = {i: (u, v) if o == u else o for i, o in enumerate(old)}
    newF = {i for i, o in enumerate(old) if o in F or (o == u and v in F)}
    if reduced.k != k - 1:
        raise AssertionError("merge did not shorten the paths by one")
    return reduced, KernelCertificate("fvs", Verdict.REDUCED, vmap, positions), newF
