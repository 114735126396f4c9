"""Graphs, shortest-path reconfiguration instances and their layered structure."""

from __future__ import annotations

import enum
import heapq
import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


class InstanceError(ValueError):
    """Raised when an instance file cannot be parsed or fails validation."""

    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message)
        self.violations = list(violations)


class Model(str, enum.Enum):
    TJ = "TJ"
    TS = "TS"


class Verdict(str, enum.Enum):
    REDUCED = "Reduced"
    DECIDED_NO = "DecidedNo"
    UNCHANGED = "Unchanged"


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        if n < 0:
            raise ValueError("negative vertex count")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge {u}-{v}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def bfs(self, source: int) -> list[int | None]:
        dist: list[int | None] = [None] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] is None:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled densely; returns it with the new->old map."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[w])
            for u in keep
            for w in self.adj[u]
            if w in index and u < w
        ]
        return Graph.from_edges(len(keep), edges), keep


@dataclass(frozen=True)
class SPInstance:
    graph: Graph
    s: int
    t: int
    P: tuple[int, ...]
    Q: tuple[int, ...]
    model: Model = Model.TJ
    budget: int | None = None

    @property
    def k(self) -> int:
        return len(self.P) - 1

    def with_paths(self, P: Sequence[int], Q: Sequence[int]) -> SPInstance:
        return SPInstance(self.graph, self.s, self.t, tuple(P), tuple(Q), self.model, self.budget)

    def reversed(self) -> SPInstance:
        """Same instance with source and target paths swapped."""
        return self.with_paths(self.Q, self.P)

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges()],
            "s": self.s,
            "t": self.t,
            "P": list(self.P),
            "Q": list(self.Q),
            "model": self.model.value,
            "budget": self.budget,
        }

    @classmethod
    def from_json(cls, data: dict, validate: bool = True) -> SPInstance:
        try:
            graph = Graph.from_edges(int(data["n"]), data["edges"])
            inst = cls(
                graph,
                int(data["s"]),
                int(data["t"]),
                tuple(int(v) for v in data["P"]),
                tuple(int(v) for v in data["Q"]),
                Model(data.get("model", "TJ")),
                None if data.get("budget") is None else int(data["budget"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InstanceError(f"malformed instance: {exc}") from exc
        if validate:
            problems = validate_instance(inst)
            if problems:
                raise InstanceError("invalid instance: " + "; ".join(problems), problems)
        return inst


@dataclass(frozen=True)
class LayeredView:
    dist_s: tuple[int | None, ...]
    dist_t: tuple[int | None, ...]
    k: int
    layers: tuple[tuple[int, ...], ...]

    def on_shortest_path(self, v: int) -> bool:
        ds, dt = self.dist_s[v], self.dist_t[v]
        return ds is not None and dt is not None and ds + dt == self.k

    def layer_of(self, v: int) -> int | None:
        return self.dist_s[v] if self.on_shortest_path(v) else None


@dataclass
class KernelCertificate:
    """Record of one reduction pass.

    ``vertex_map`` sends each reduced vertex to its original vertex, or to a
    tuple of original vertices when several were contracted into it.
    ``position_map`` sends each reduced path position to the original one.
    """

    pass_name: str
    verdict: Verdict
    vertex_map: dict[int, int | tuple[int, ...]] = field(default_factory=dict)
    position_map: tuple[int, ...] = ()
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "pass": self.pass_name,
            "verdict": self.verdict.value,
            "vertex_map": {
                str(k): (list(v) if isinstance(v, tuple) else v) for k, v in self.vertex_map.items()
            },
            "position_map": list(self.position_map),
            "notes": self.notes,
        }

    def lift_moves(self, moves: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
        lifted = []
        for p, w in moves:
            orig = self.vertex_map[w]
            if isinstance(orig, tuple):
                raise ValueError(f"move onto contracted vertex {w} cannot be lifted")
            lifted.append((self.position_map[p], orig))
        return lifted


def lift_through(certs: Sequence[KernelCertificate], moves: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Lift a sequence found on the last reduced instance back through ``certs``."""
    out = list(moves)
    for cert in reversed(certs):
        out = cert.lift_moves(out)
    return out


def identity_certificate(pass_name: str, inst: SPInstance, verdict: Verdict = Verdict.UNCHANGED) -> KernelCertificate:
    return KernelCertificate(
        pass_name,
        verdict,
        {v: v for v in range(inst.graph.n)},
        tuple(range(inst.k + 1)),
    )


def load_instance(path: str | Path) -> SPInstance:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceError("instance file must hold a JSON object")
    return SPInstance.from_json(data)


def save_instance(inst: SPInstance, path: str | Path) -> None:
    Path(path).write_text(json.dumps(inst.to_json(), sort_keys=True) + "\n", encoding="utf-8")


def _path_problems(name: str, path: Sequence[int], inst: SPInstance, k: int | None) -> list[str]:
    g = inst.graph
    out = []
    if not path:
        return [f"{name} is empty"]
    if any(not 0 <= v < g.n for v in path):
        return [f"{name} has a vertex out of range"]
    if path[0] != inst.s:
        out.append(f"{name} does not start at s")
    if path[-1] != inst.t:
        out.append(f"{name} does not end at t")
    if len(set(path)) != len(path):
        out.append(f"{name} repeats a vertex")
    if any(not g.has_edge(a, b) for a, b in zip(path, path[1:])):
        out.append(f"{name} not a path")
    elif k is not None and len(path) - 1 != k and not out:
        out.append(f"{name} not a shortest path")
    return out


def validate_instance(inst: SPInstance) -> list[str]:
    """All violated instance invariants; an empty list means the instance is valid."""
    g = inst.graph
    problems: list[str] = []
    if not (0 <= inst.s < g.n and 0 <= inst.t < g.n):
        return ["s or t out of range"]
    if inst.s == inst.t:
        problems.append("s equals t")
    if inst.budget is not None and inst.budget < 0:
        problems.append("negative budget")
    k = g.bfs(inst.s)[inst.t]
    if k is None:
        problems.append("no st-path")
    problems += _path_problems("P", inst.P, inst, k)
    problems += _path_problems("Q", inst.Q, inst, k)
    if len(inst.P) != len(inst.Q):
        problems.append("length mismatch")
    return problems


def layered_view(g: Graph, s: int, t: int) -> LayeredView:
    dist_s = g.bfs(s)
    k = dist_s[t]
    if k is None:
        raise ValueError("no st-path")
    dist_t = g.bfs(t)
    layers: list[list[int]] = [[] for _ in range(k + 1)]
    for v in range(g.n):
        ds, dt = dist_s[v], dist_t[v]
        if ds is not None and dt is not None and ds + dt == k:
            layers[ds].append(v)
    return LayeredView(tuple(dist_s), tuple(dist_t), k, tuple(tuple(layer) for layer in layers))


def prune_to_shortest_dag(inst: SPInstance) -> tuple[SPInstance, KernelCertificate]:
    """Drop every vertex lying on no shortest st-path; all other edges survive."""
    view = layered_view(inst.graph, inst.s, inst.t)
    keep = [v for layer in view.layers for v in layer]
    if len(keep) == inst.graph.n:
        return inst, identity_certificate("prune", inst)
    sub, old = inst.graph.induced(keep)
    new = {v: i for i, v in enumerate(old)}
    reduced = SPInstance(
        sub,
        new[inst.s],
        new[inst.t],
        tuple(new[v] for v in inst.P),
        tuple(new[v] for v in inst.Q),
        inst.model,
        inst.budget,
    )
    cert = KernelCertificate(
        "prune",
        Verdict.REDUCED,
        dict(enumerate(old)),
        tuple(range(inst.k + 1)),
        {"removed": inst.graph.n - len(old)},
    )
    return reduced, cert


def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Degeneracy by repeatedly removing a minimum-degree vertex (smallest id on ties)."""
    deg = [len(a) for a in g.adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order: list[int] = []
    d = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if removed[v] or dv != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        d = max(d, dv)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return d, order
