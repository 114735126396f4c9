"""Treedepth decompositions and the flap reduction.

For a node v of the decomposition, the subtrees hanging below v only see
v and its ancestors. Two such subtrees are equivalent when they are
isomorphic by a map that respects which ancestors each vertex touches.
Among many equivalent subtrees only a few can ever carry tokens at once,
so all but ``ceil((k + 1) / 2)`` of those avoiding P and Q are deleted.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from ..graph import Graph, KernelCertificate, SPInstance, Verdict, degeneracy, identity_certificate, prune_to_shortest_dag
from ._common import compose, relabel


@dataclass(frozen=True)
class TreedepthDecomposition:
    """Rooted forest given by a parent array; roots have parent ``None``."""

    parent: tuple[int | None, ...]

    @property
    def n(self) -> int:
        return len(self.parent)

    def depth_of(self, v: int) -> int:
        """1 for roots."""
        d = 1
        while self.parent[v] is not None:
            v = self.parent[v]
            d += 1
        return d

    @property
    def depth(self) -> int:
        return max((self.depth_of(v) for v in range(self.n)), default=0)

    def ancestors(self, v: int) -> list[int]:
        out = []
        a = self.parent[v]
        while a is not None:
            out.append(a)
            a = self.parent[a]
        return out

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return kids

    def problems(self, g: Graph) -> list[str]:
        if self.n != g.n:
            return [f"decomposition has {self.n} vertices, graph has {g.n}"]
        out = []
        for v in range(self.n):
            seen = {v}
            a = self.parent[v]
            while a is not None:
                if a in seen or not 0 <= a < self.n:
                    return [f"parent array is not a forest (at vertex {v})"]
                seen.add(a)
                a = self.parent[a]
        for u, v in g.edges():
            if u not in self.ancestors(v) and v not in self.ancestors(u):
                out.append(f"edge {u}-{v} joins two vertices that are not ancestor and descendant")
        return out

    def restrict(self, keep: Sequence[int]) -> TreedepthDecomposition:
        """Decomposition of the subgraph induced on ``keep`` (old ids, new order)."""
        index = {v: i for i, v in enumerate(keep)}
        parent = []
        for v in keep:
            a = self.parent[v]
            while a is not None and a not in index:
                a = self.parent[a]
            parent.append(None if a is None else index[a])
        return TreedepthDecomposition(tuple(parent))

    def to_json(self) -> dict:
        return {"parent": list(self.parent), "depth": self.depth}


def compute_treedepth(g: Graph, depth_limit: int) -> TreedepthDecomposition | None:
    """Minimum-depth decomposition if the treedepth is at most ``depth_limit``.

    Exact search: a connected graph has treedepth one more than the best
    choice of root, a disconnected one the maximum over its components.
    Results are memoised per vertex set (as a bitmask).
    """
    adj = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    exact: dict[int, tuple[int, int]] = {}  # mask -> (depth, root)
    failed: dict[int, int] = {}  # mask -> largest limit known to be too small

    def components(mask: int) -> list[int]:
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

    def lower_bound(mask: int) -> int:
        verts = [v for v in range(g.n) if mask >> v & 1]
        if len(verts) <= 2:
            return len(verts)
        sub, _ = g.induced(verts)
        return degeneracy(sub)[0] + 1

    def solve(mask: int, limit: int) -> int | None:
        comps = components(mask)
        if len(comps) > 1:
            best = 0
            for c in comps:
                d = solve(c, limit)
                if d is None:
                    return None
                best = max(best, d)
            return best
        if mask in exact:
            d = exact[mask][0]
            return d if d <= limit else None
        if failed.get(mask, 0) >= limit:
            return None
        if mask & (mask - 1) == 0:
            exact[mask] = (1, mask.bit_length() - 1)
            return 1 if limit >= 1 else None
        if lower_bound(mask) > limit:
            failed[mask] = limit
            return None
        verts = sorted((v for v in range(g.n) if mask >> v & 1), key=lambda v: -bin(adj[v] & mask).count("1"))
        best = None
        cap = limit
        for v in verts:
            d = solve(mask & ~(1 << v), cap - 1)
            if d is not None:
                best = (d + 1, v)
                cap = d
                if cap == 0:
                    break
        if best is None:
            failed[mask] = max(failed.get(mask, 0), limit)
            return None
        exact[mask] = best
        return best[0]

    full = (1 << g.n) - 1
    if g.n == 0:
        return TreedepthDecomposition(())
    if solve(full, depth_limit) is None:
        return None
    parent: list[int | None] = [None] * g.n

    def build(mask: int, above: int | None) -> None:
        for c in components(mask):
            if c not in exact:
                solve(c, g.n)
            root = exact[c][1]
            parent[root] = above
            build(c & ~(1 << root), root)

    build(full, None)
    return TreedepthDecomposition(tuple(parent))


def flap_encoding(g: Graph, td: TreedepthDecomposition, root: int, depth: list[int], kids: list[list[int]]) -> tuple:
    """Canonical form of the subtree at ``root``: ancestor-depth labels with sorted children."""
    label = frozenset(depth[a] for a in td.ancestors(root) if a in g.adj[root])
    return (tuple(sorted(label)), tuple(sorted(flap_encoding(g, td, c, depth, kids) for c in kids[root])))


def td_flap_reduce(inst: SPInstance, td: TreedepthDecomposition) -> tuple[SPInstance, KernelCertificate]:
    """Delete surplus equivalent flaps, deepest nodes first."""
    bad = td.problems(inst.graph)
    if bad:
        raise ValueError("invalid treedepth decomposition: " + bad[0])
    # unlike the other passes this one also runs for k <= 2, where it is just as sound
    base, pcert = prune_to_shortest_dag(inst)
    tdb = td.restrict([pcert.vertex_map[v] for v in range(base.graph.n)])
    g = base.graph
    quota = -(-(base.k + 1) // 2)
    fixed = set(base.P) | set(base.Q)
    depth = [tdb.depth_of(v) for v in range(g.n)]
    kids = tdb.children()
    alive = [True] * g.n
    removed_classes = []

    def subtree(v: int) -> list[int]:
        out, stack = [], [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(kids[x])
        return out

    for node in sorted(range(g.n), key=lambda v: -depth[v]):
        if not alive[node] or len(kids[node]) <= quota:
            continue
        classes: dict[tuple, list[int]] = defaultdict(list)
        for c in kids[node]:
            classes[flap_encoding(g, tdb, c, depth, kids)].append(c)
        for enc, members in classes.items():
            free = [c for c in members if not fixed.intersection(subtree(c))]
            if len(free) <= quota:
                continue
            extra = free[quota:]
            for c in extra:
                for x in subtree(c):
                    alive[x] = False
            kids[node] = [c for c in kids[node] if c not in extra]
            removed_classes.append(
                {
                    "node": pcert.vertex_map[node],
                    "kept": [pcert.vertex_map[c] for c in members if c not in extra],
                    "removed": [pcert.vertex_map[c] for c in extra],
                }
            )
    if all(alive):
        if base is inst:
            return inst, identity_certificate("treedepth", inst)
        return base, KernelCertificate("treedepth", Verdict.REDUCED, pcert.vertex_map, pcert.position_map, {"quota": quota})
    keep = [v for v in range(g.n) if alive[v]]
    reduced, old = relabel(base, keep)
    reduced, pr = prune_to_shortest_dag(reduced)
    if reduced.k != inst.k:
        raise AssertionError("deleting flaps changed dist(s, t)")
    local = KernelCertificate(
        "treedepth",
        Verdict.REDUCED,
        {v: old[pr.vertex_map[v]] for v in range(reduced.graph.n)},
        tuple(range(inst.k + 1)),
    )
    notes = {"quota": quota, "depth": tdb.depth, "reduced_classes": removed_classes}
    return reduced, compose(pcert, local, "treedepth", Verdict.REDUCED, notes)
