"""Kernel for graphs that become a disjoint union of cliques after deleting C.

The type of a vertex outside C is its neighbourhood in C. Two vertices of
one clique with the same type are true twins, and a shortest path never
holds two true twins, so one of them can go. A clique's type is the set of
its member types; cliques of equal type are interchangeable, and only a
bounded number per type is kept besides those touching P or Q.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from ..graph import Graph, KernelCertificate, SPInstance, Verdict, identity_certificate, prune_to_shortest_dag
from ._common import compose, relabel


def cluster_components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]] | None:
    """Components of ``g - removed`` if each is a clique, else ``None``."""
    gone = set(removed)
    seen = set(gone)
    comps = []
    for v in range(g.n):
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        i = 0
        while i < len(comp):
            for w in g.adj[comp[i]]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
            i += 1
        members = set(comp)
        if any(len((g.adj[u] & members)) != len(comp) - 1 for u in comp):
            return None
        comps.append(sorted(comp))
    return comps


def is_cluster_graph(g: Graph, removed: Iterable[int] = ()) -> bool:
    return cluster_components(g, removed) is not None


def _induced_p3(g: Graph, gone: frozenset[int]) -> tuple[int, int, int] | None:
    for v in range(g.n):
        if v in gone:
            continue
        nb = sorted(w for w in g.adj[v] if w not in gone)
        for i, a in enumerate(nb):
            for b in nb[i + 1 :]:
                if b not in g.adj[a]:
                    return a, v, b
    return None


def compute_cluster_modulator(g: Graph, size_limit: int) -> frozenset[int] | None:
    """Minimum C with ``g - C`` a cluster graph, if one of size at most ``size_limit`` exists.

    Branches three ways on an induced path on three vertices.
    """

    def branch(gone: frozenset[int], budget: int) -> frozenset[int] | None:
        p3 = _induced_p3(g, gone)
        if p3 is None:
            return gone
        if budget == 0:
            return None
        for v in p3:
            found = branch(gone | {v}, budget - 1)
            if found is not None:
                return found
        return None

    for size in range(size_limit + 1):
        found = branch(frozenset(), size)
        if found is not None:
            return found
    return None


def cluster_deletion_kernel(inst: SPInstance, C: Iterable[int]) -> tuple[SPInstance, KernelCertificate]:
    """Shrink cliques to one vertex per type and keep ``3 * |C|`` cliques per clique type.

    Vertices of P and Q are never deleted, nor is any clique containing one.
    """
    C = frozenset(C)
    if cluster_components(inst.graph, C) is None:
        raise ValueError("G - C is not a cluster graph")
    if inst.k <= 2:
        return inst, identity_certificate("cluster", inst)
    base, pcert = prune_to_shortest_dag(inst)
    Cb = frozenset(v for v in range(base.graph.n) if pcert.vertex_map[v] in C)
    g = base.graph
    fixed = set(base.P) | set(base.Q)
    cliques = cluster_components(g, Cb)
    assert cliques is not None

    def vtype(v: int) -> frozenset[int]:
        return frozenset(g.adj[v] & Cb)

    twins: set[int] = set()
    shrunk = []
    for K in cliques:
        seen_types = {vtype(v) for v in K if v in fixed}
        kept = [v for v in K if v in fixed]
        for v in K:
            if v in fixed:
                continue
            t = vtype(v)
            if t in seen_types:
                twins.add(v)
            else:
                seen_types.add(t)
                kept.append(v)
        shrunk.append(sorted(kept))

    by_type: dict[frozenset, list[list[int]]] = defaultdict(list)
    for K in shrunk:
        if not any(v in fixed for v in K):
            by_type[frozenset(vtype(v) for v in K)].append(K)
    quota = 3 * len(Cb)
    spare = [K for group in by_type.values() for K in group[quota:]]
    drop = twins.union(*spare)

    notes = {
        "modulator": sorted(pcert.vertex_map[v] for v in Cb),
        "cliques": len(cliques),
        "clique_types": len(by_type),
        "twins_removed": len(twins),
        "cliques_removed": len(spare),
        "quota": quota,
    }
    if not drop:
        if base is inst:
            return inst, identity_certificate("cluster", inst)
        return base, KernelCertificate("cluster", Verdict.REDUCED, pcert.vertex_map, pcert.position_map, notes)
    keep = [v for v in range(g.n) if v not in drop]
    reduced, old = relabel(base, keep)
    reduced, pr = prune_to_shortest_dag(reduced)
    if reduced.k != inst.k:
        raise AssertionError("deleting twins or spare cliques changed dist(s, t)")
    local = KernelCertificate(
        "cluster", Verdict.REDUCED, {v: old[pr.vertex_map[v]] for v in range(reduced.graph.n)}, tuple(range(inst.k + 1))
    )
    return reduced, compose(pcert, local, "cluster", Verdict.REDUCED, notes)

