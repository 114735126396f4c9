"""Exact search over the reconfiguration graph of shortest st-paths.

States are stored as the per-layer index of each path vertex (a ``bytes``
object when every layer has at most 256 vertices, a tuple otherwise), which
keeps the visited table small enough for the generated hardness instances.
"""

from __future__ import annotations

import heapq
import time
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .graph import Graph, Model, SPInstance, layered_view

Move = tuple[int, int]

DEFAULT_STATE_CAP = 2_000_000


@dataclass
class SolveResult:
    reachable: bool | None
    length: int | None = None
    moves: list[Move] | None = None
    stats: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return {True: "yes", False: "no", None: "unknown"}[self.reachable]

    def to_json(self) -> dict:
        return {
            "reachable": self.status,
            "length": self.length,
            "moves": None if self.moves is None else [list(m) for m in self.moves],
            "stats": self.stats,
        }


@dataclass(frozen=True)
class SequenceViolation:
    index: int
    reason: str

    def __str__(self) -> str:
        return f"move {self.index}: {self.reason}"


def neighbors(state: Sequence[int], inst: SPInstance) -> list[Move]:
    """Every single-vertex change turning ``state`` into another shortest st-path."""
    adj = inst.graph.adj
    out = []
    for p in range(1, len(state) - 1):
        cur = state[p]
        for w in sorted(adj[state[p - 1]] & adj[state[p + 1]]):
            if w == cur:
                continue
            if inst.model is Model.TS and w not in adj[cur]:
                continue
            assert w not in state, "common neighbour of p-1 and p+1 must lie in layer p"
            out.append((p, w))
    return out


class _StateSpace:
    """Index-encoded view of the layered shortest-path structure of an instance."""

    def __init__(self, inst: SPInstance, allow: Callable[[int, int, int], bool] | None = None):
        view = layered_view(inst.graph, inst.s, inst.t)
        self.inst = inst
        self.k = view.k
        self.layers = view.layers
        self.index = {v: i for layer in self.layers for i, v in enumerate(layer)}
        self.compact = max(len(layer) for layer in self.layers) <= 256
        size = max(len(layer) for layer in self.layers)
        self.unit = [bytes((i,)) for i in range(size)] if self.compact else [(i,) for i in range(size)]
        self.adj = inst.graph.adj
        self.ts = inst.model is Model.TS
        self.allow = allow
        self._cache: dict[tuple[int, int, int, int], tuple[int, ...]] = {}

    def encode(self, path: Sequence[int]):
        idx = [self.index[v] for v in path]
        return bytes(idx) if self.compact else tuple(idx)

    def decode(self, state) -> tuple[int, ...]:
        return tuple(self.layers[p][i] for p, i in enumerate(state))

    def _candidates(self, p: int, a: int, c: int, b: int) -> tuple[int, ...]:
        layers, adj = self.layers, self.adj
        va, vc, vb = layers[p - 1][a], layers[p][c], layers[p + 1][b]
        common = adj[va] & adj[vb]
        out = []
        for i, w in enumerate(layers[p]):
            if i == c or w not in common:
                continue
            if self.ts and w not in adj[vc]:
                continue
            if self.allow is not None and not self.allow(p, vc, w):
                continue
            out.append(i)
        return tuple(out)

    def successors(self, st) -> Iterable:
        for _, _, succ in self.moves(st):
            yield succ

    def moves(self, st) -> Iterable:
        """``(position, layer index, successor state)`` for every legal move."""
        cache, unit = self._cache, self.unit
        for p in range(1, self.k):
            key = (p, st[p - 1], st[p], st[p + 1])
            cands = cache.get(key)
            if cands is None:
                cands = cache[key] = self._candidates(*key)
            for i in cands:
                yield p, i, st[:p] + unit[i] + st[p + 1 :]

    def token_distances(self, target: Sequence[int]) -> list[list[float]]:
        """Per layer, a lower bound on the moves a token needs to reach ``target[p]``.

        Two vertices of layer p are linked when some vertex of layer p-1 and
        some vertex of layer p+1 are adjacent to both (and, under sliding, when
        they are adjacent themselves). A token can only move along such links.
        """
        adj = self.adj
        out: list[list[float]] = []
        for p, layer in enumerate(self.layers):
            dist = [float("inf")] * len(layer)
            goal = self.index[target[p]]
            dist[goal] = 0
            if 0 < p < self.k:
                before = set(self.layers[p - 1])
                after = set(self.layers[p + 1])
                left = [adj[v] & before for v in layer]
                right = [adj[v] & after for v in layer]
                queue = deque([goal])
                while queue:
                    a = queue.popleft()
                    for b in range(len(layer)):
                        if dist[b] != float("inf"):
                            continue
                        if self.ts and layer[b] not in adj[layer[a]]:
                            continue
                        if left[a] & left[b] and right[a] & right[b]:
                            dist[b] = dist[a] + 1
                            queue.append(b)
            out.append(dist)
        return out


def _diff_move(a, b, space: _StateSpace) -> Move:
    for p in range(len(a)):
        if a[p] != b[p]:
            return (p, space.layers[p][b[p]])
    raise AssertionError("consecutive states are identical")


def _moves_along(chain: list, space: _StateSpace) -> list[Move]:
    return [_diff_move(a, b, space) for a, b in zip(chain, chain[1:])]


def _chain(parents: dict, state) -> list:
    out = [state]
    while parents[out[-1]] is not None:
        out.append(parents[out[-1]])
    return out


def _unidirectional(
    space: _StateSpace, inst: SPInstance, state_cap: int, depth_limit: int | None
) -> SolveResult:
    """Breadth-first search from P; with a depth limit, states whose lower bound
    on the remaining moves overshoots the limit are not stored."""
    start_time = time.perf_counter()
    src, dst = space.encode(inst.P), space.encode(inst.Q)
    dist = space.token_distances(inst.Q) if depth_limit is not None else None
    h0 = sum(dist[p][i] for p, i in enumerate(src)) if dist else 0
    parents = {src: None}
    frontier = [(src, h0)]
    depth = 0
    peak = 1
    expanded = 0

    def stats() -> dict:
        return {
            "states": len(parents),
            "expanded": expanded,
            "peak_frontier": peak,
            "seconds": round(time.perf_counter() - start_time, 4),
        }

    if src == dst:
        return SolveResult(True, 0, [], stats())
    while frontier and (depth_limit is None or depth < depth_limit):
        nxt = []
        for st, h in frontier:
            expanded += 1
            for p, i, succ in space.moves(st):
                if succ in parents:
                    continue
                hn = 0
                if dist is not None:
                    hn = h - dist[p][st[p]] + dist[p][i]
                    if depth + 1 + hn > depth_limit:
                        continue
                parents[succ] = st
                if succ == dst:
                    chain = _chain(parents, succ)[::-1]
                    moves = _moves_along(chain, space)
                    return SolveResult(True, len(moves), moves, stats())
                nxt.append((succ, hn))
            if len(parents) > state_cap:
                return SolveResult(None, stats=stats())
        frontier = nxt
        peak = max(peak, len(frontier))
        depth += 1
    return SolveResult(False, stats=stats())


def solve(inst: SPInstance, state_cap: int = DEFAULT_STATE_CAP, method: str = "astar") -> SolveResult:
    """Minimum reconfiguration sequence from P to Q.

    ``method="astar"`` (default) runs A* with :meth:`_StateSpace.token_distances`
    summed over positions as the heuristic; it is consistent, so the first time
    Q is popped its distance is optimal. ``method="bfs"`` runs plain
    bidirectional breadth-first search.
    """
    if method == "astar":
        return _astar(inst, state_cap)
    if method != "bfs":
        raise ValueError(f"unknown method {method!r}")
    return _bidirectional(inst, state_cap)


def _astar(inst: SPInstance, state_cap: int) -> SolveResult:
    start_time = time.perf_counter()
    space = _StateSpace(inst)
    src, dst = space.encode(inst.P), space.encode(inst.Q)
    dist = space.token_distances(inst.Q)
    h0 = sum(dist[p][i] for p, i in enumerate(src))
    g = {src: 0}
    parents = {src: None}
    closed = set()
    # ties go to the deeper state, which walks straight down plateaus of equal f
    heap = [(h0, 0, 0, src)]
    counter = 1
    peak = 1

    def stats() -> dict:
        return {
            "states": len(g),
            "expanded": len(closed),
            "peak_frontier": peak,
            "seconds": round(time.perf_counter() - start_time, 4),
            "lower_bound": h0,
        }

    if h0 == float("inf"):
        return SolveResult(False, stats=stats())
    while heap:
        f, neg_depth, _, st = heapq.heappop(heap)
        if st in closed:
            continue
        if st == dst:
            chain = _chain(parents, st)[::-1]
            moves = _moves_along(chain, space)
            return SolveResult(True, len(moves), moves, stats())
        closed.add(st)
        gs = -neg_depth
        h = f - gs
        for p, i, succ in space.moves(st):
            if succ in closed:
                continue
            gn = gs + 1
            if gn >= g.get(succ, gn + 1):
                continue
            hn = h - dist[p][st[p]] + dist[p][i]
            if hn == float("inf"):
                continue
            g[succ] = gn
            parents[succ] = st
            heapq.heappush(heap, (gn + hn, -gn, counter, succ))
            counter += 1
        peak = max(peak, len(heap))
        if len(g) > state_cap:
            return SolveResult(None, stats=stats())
    return SolveResult(False, stats=stats())


def _bidirectional(inst: SPInstance, state_cap: int) -> SolveResult:
    start_time = time.perf_counter()
    space = _StateSpace(inst)
    src, dst = space.encode(inst.P), space.encode(inst.Q)
    if src == dst:
        return SolveResult(True, 0, [], {"states": 1, "expanded": 0, "peak_frontier": 1, "seconds": 0.0})
    sides = [
        {"parents": {src: None}, "depth": {src: 0}, "frontier": [src], "level": 0},
        {"parents": {dst: None}, "depth": {dst: 0}, "frontier": [dst], "level": 0},
    ]
    expanded = 0
    peak = 1

    def stats() -> dict:
        return {
            "states": len(sides[0]["parents"]) + len(sides[1]["parents"]),
            "expanded": expanded,
            "peak_frontier": peak,
            "seconds": round(time.perf_counter() - start_time, 4),
        }

    while sides[0]["frontier"] and sides[1]["frontier"]:
        turn = 0 if len(sides[0]["frontier"]) <= len(sides[1]["frontier"]) else 1
        me, other = sides[turn], sides[1 - turn]
        best = None
        nxt = []
        level = me["level"] + 1
        for st in me["frontier"]:
            expanded += 1
            for succ in space.successors(st):
                if succ in me["parents"]:
                    continue
                me["parents"][succ] = st
                me["depth"][succ] = level
                nxt.append(succ)
                if succ in other["depth"]:
                    total = level + other["depth"][succ]
                    if best is None or total < best[0]:
                        best = (total, succ)
            if stats()["states"] > state_cap:
                return SolveResult(None, stats=stats())
        me["frontier"] = nxt
        me["level"] = level
        peak = max(peak, len(nxt))
        if best is not None:
            meet = best[1]
            fwd = _chain(sides[0]["parents"], meet)[::-1]
            bwd = _chain(sides[1]["parents"], meet)
            chain = fwd + bwd[1:]
            moves = _moves_along(chain, space)
            assert len(moves) == best[0]
            return SolveResult(True, len(moves), moves, stats())
    return SolveResult(False, stats=stats())


def solve_bounded(inst: SPInstance, budget: int, state_cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    """Is Q reachable from P in at most ``budget`` moves? Depth-limited BFS."""
    res = _unidirectional(_StateSpace(inst), inst, state_cap, budget)
    res.stats["budget"] = budget
    return res


def solve_monotone(inst: SPInstance, layout, state_cap: int = DEFAULT_STATE_CAP, allow_unproven: bool = False) -> SolveResult:
    """Search restricted to sequences in which every move raises a token's row level.

    ``layout`` is the :class:`~pathreconf.reduction.construct.ReductionLayout`
    produced alongside ``inst``. In generated instances row levels never rise
    along a shortest path and consecutive path vertices differ by at most one
    level (checked here), so a level-raising move lifts its token by exactly
    one level. Every token then visits every level once, and the monotone
    sequences are exactly the concatenations of ascending sweeps, each carrying
    the whole path from one level to the next. The search is a breadth-first
    search over the paths reached by such sweeps.

    Completeness of this restriction is only established for the plain
    token-jumping construction; other variants need ``allow_unproven=True``.
    """
    start_time = time.perf_counter()
    if len(layout.records) != inst.graph.n or any(r.v != i for i, r in enumerate(layout.records)):
        raise ValueError("layout does not cover every vertex of the instance")
    if layout.variant != "tj" and not allow_unproven:
        raise ValueError(f"monotone completeness is unproven for variant {layout.variant!r}")
    level = layout.vertex_levels()
    view = layered_view(inst.graph, inst.s, inst.t)
    k = view.k
    adj = inst.graph.adj
    ts = inst.model is Model.TS
    for p in range(1, k - 1):
        for v in view.layers[p]:
            for w in adj[v]:
                if view.dist_s[w] == p + 1 and view.on_shortest_path(w) and level[v] - level[w] not in (0, 1):
                    raise ValueError(f"edge {v}-{w} breaks the row-level structure")
    top = level[inst.Q[1]]
    if level[inst.P[1]] != 0 or any(level[v] != 0 for v in inst.P[1:-1]) or any(level[v] != top for v in inst.Q[1:-1]):
        raise ValueError("P and Q must be the lowest and highest rows of the layout")
    by_level: list[list[list[int]]] = [[[] for _ in range(k + 1)] for _ in range(top + 1)]
    for p in range(1, k):
        for v in view.layers[p]:
            by_level[level[v]][p].append(v)

    def sweeps(a: tuple[int, ...], lvl: int) -> Iterable[tuple[int, ...]]:
        """Paths at level ``lvl`` reachable from ``a`` by one ascending sweep."""
        cols = by_level[lvl]
        b = [inst.s]

        def extend(p: int):
            if p == k:
                if inst.t in adj[b[-1]]:
                    yield tuple(b) + (inst.t,)
                return
            for w in cols[p]:
                if w in adj[b[-1]] and w in adj[a[p + 1]] and (not ts or w in adj[a[p]]):
                    b.append(w)
                    yield from extend(p + 1)
                    b.pop()

        yield from extend(1)

    start = tuple(inst.P)
    parents: dict[tuple[int, ...], tuple[int, ...] | None] = {start: None}
    frontier = [start]
    peak = 1

    def stats() -> dict:
        return {
            "states": len(parents),
            "levels": top + 1,
            "peak_frontier": peak,
            "seconds": round(time.perf_counter() - start_time, 4),
            "monotone": True,
        }

    for lvl in range(1, top + 1):
        nxt = []
        for a in frontier:
            for b in sweeps(a, lvl):
                if b not in parents:
                    parents[b] = a
                    nxt.append(b)
                    if len(parents) > state_cap:
                        return SolveResult(None, stats=stats())
        frontier = nxt
        peak = max(peak, len(frontier))
        if not frontier:
            return SolveResult(False, stats=stats())
    goal = tuple(inst.Q)
    if goal not in parents:
        return SolveResult(False, stats=stats())
    chain = _chain(parents, goal)[::-1]
    moves = [(p, b[p]) for b in chain[1:] for p in range(1, k)]
    return SolveResult(True, len(moves), moves, stats())


def enumerate_shortest_paths(g: Graph, s: int, t: int, cap: int) -> tuple[list[tuple[int, ...]], bool]:
    """All shortest st-paths by DFS over the layers; the flag is False if ``cap`` was hit."""
    view = layered_view(g, s, t)
    k = view.k
    on_path = set(v for layer in view.layers for v in layer)
    succ = {
        v: sorted(w for w in g.adj[v] if w in on_path and view.dist_s[w] == view.dist_s[v] + 1)
        for v in on_path
    }
    paths: list[tuple[int, ...]] = []
    stack: list[int] = [s]

    def dfs() -> bool:
        v = stack[-1]
        if len(stack) == k + 1:
            paths.append(tuple(stack))
            return len(paths) <= cap
        for w in succ[v]:
            stack.append(w)
            ok = dfs()
            stack.pop()
            if not ok:
                return False
        return True

    complete = dfs()
    if not complete:
        paths = paths[:cap]
    return paths, complete


def oracle_solve(inst: SPInstance, cap: int = 50_000) -> SolveResult:
    """Brute force: materialise one node per shortest path, then plain BFS."""
    start_time = time.perf_counter()
    paths, complete = enumerate_shortest_paths(inst.graph, inst.s, inst.t, cap)
    if not complete:
        return SolveResult(None, stats={"paths": cap, "capped": True})
    ids = {p: i for i, p in enumerate(paths)}
    adj = inst.graph.adj
    k = inst.k
    buckets: dict[tuple, list[int]] = defaultdict(list)
    for i, path in enumerate(paths):
        for p in range(1, k):
            buckets[(p, path[:p], path[p + 1 :])].append(i)
    edges: list[list[int]] = [[] for _ in paths]
    for (p, _, _), members in buckets.items():
        for a in members:
            for b in members:
                if a == b:
                    continue
                if inst.model is Model.TS and paths[b][p] not in adj[paths[a][p]]:
                    continue
                edges[a].append(b)
    src, dst = ids[tuple(inst.P)], ids[tuple(inst.Q)]
    parent = {src: None}
    queue = deque([src])
    while queue:
        a = queue.popleft()
        if a == dst:
            break
        for b in edges[a]:
            if b not in parent:
                parent[b] = a
                queue.append(b)
    stats = {"paths": len(paths), "seconds": round(time.perf_counter() - start_time, 4)}
    if dst not in parent:
        return SolveResult(False, stats=stats)
    chain = [dst]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    chain.reverse()
    moves = []
    for a, b in zip(chain, chain[1:]):
        pa, pb = paths[a], paths[b]
        p = next(i for i in range(k + 1) if pa[i] != pb[i])
        moves.append((p, pb[p]))
    return SolveResult(True, len(moves), moves, stats)


def verify_sequence(inst: SPInstance, moves: Iterable[Sequence[int]]) -> SequenceViolation | None:
    """Replay ``moves`` from P; ``None`` means every step is legal and the walk ends at Q."""
    adj = inst.graph.adj
    n = inst.graph.n
    path = list(inst.P)
    k = len(path) - 1
    count = 0
    for i, move in enumerate(moves):
        count = i + 1
        try:
            p, w = (int(x) for x in move)
        except (TypeError, ValueError):
            return SequenceViolation(i, "malformed move")
        if not 0 < p < k:
            return SequenceViolation(i, f"position {p} is not internal")
        if not 0 <= w < n:
            return SequenceViolation(i, f"vertex {w} out of range")
        old = path[p]
        if w == old:
            return SequenceViolation(i, "move does not change the path")
        if inst.model is Model.TS and w not in adj[old]:
            return SequenceViolation(i, "slide endpoints non-adjacent")
        if path[p - 1] not in adj[w] or path[p + 1] not in adj[w]:
            return SequenceViolation(i, "result is not a shortest st-path")
        if w in path:
            return SequenceViolation(i, "result repeats a vertex")
        path[p] = w
    if tuple(path) != tuple(inst.Q):
        return SequenceViolation(count, "final path differs from Q")
    return None
