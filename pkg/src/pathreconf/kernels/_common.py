"""Helpers shared by the reduction passes."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..graph import Graph, KernelCertificate, SPInstance, Verdict


def compose(outer: KernelCertificate, inner: KernelCertificate, pass_name: str, verdict: Verdict, notes: dict) -> KernelCertificate:
    """One certificate for ``inner`` applied after ``outer`` (maps go straight to the original)."""

    def back(v):
        return outer.vertex_map[v]

    vmap = {}
    for v, mid in inner.vertex_map.items():
        if isinstance(mid, tuple):
            vmap[v] = tuple(x for m in mid for x in _as_tuple(back(m)))
        else:
            vmap[v] = back(mid)
    pmap = tuple(outer.position_map[p] for p in inner.position_map)
    return KernelCertificate(pass_name, verdict, vmap, pmap, notes)


def _as_tuple(v) -> tuple:
    return v if isinstance(v, tuple) else (v,)


def relabel(
    inst: SPInstance,
    keep: Sequence[int],
    extra_edges: Iterable[tuple[int, int]] = (),
    drop_edges: Iterable[tuple[int, int]] = (),
    P: Sequence[int] | None = None,
    Q: Sequence[int] | None = None,
) -> tuple[SPInstance, list[int]]:
    """Instance induced on ``keep`` (old ids), plus or minus some edges; returns new->old."""
    old = sorted(set(keep))
    new = {v: i for i, v in enumerate(old)}
    drop = {(min(a, b), max(a, b)) for a, b in drop_edges}
    edges = set()
    for u in old:
        for w in inst.graph.adj[u]:
            if u < w and w in new and (u, w) not in drop:
                edges.add((new[u], new[w]))
    for a, b in extra_edges:
        x, y = new[a], new[b]
        edges.add((min(x, y), max(x, y)))
    g = Graph.from_edges(len(old), sorted(edges))
    P = inst.P if P is None else P
    Q = inst.Q if Q is None else Q
    reduced = SPInstance(
        g, new[inst.s], new[inst.t], tuple(new[v] for v in P), tuple(new[v] for v in Q), inst.model, inst.budget
    )
    return reduced, old


def is_forest(g: Graph, removed: Iterable[int] = ()) -> bool:
    gone = set(removed)
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        if u in gone or v in gone:
            continue
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return True
