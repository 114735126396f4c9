"""Regular Multicolored Clique instances.

Vertices are ``(part, index)`` pairs with ``0 <= part < kappa`` and
``0 <= index < n``.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from pathlib import Path

Vertex = tuple[int, int]


def _norm(a: Vertex, b: Vertex) -> tuple[Vertex, Vertex]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class RMCInstance:
    kappa: int
    n: int
    r: int
    edges: frozenset[tuple[Vertex, Vertex]]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(_norm(a, b) for a, b in self.edges))
        nbrs: dict[Vertex, set[Vertex]] = {v: set() for v in self.vertices()}
        for a, b in self.edges:
            nbrs.setdefault(a, set()).add(b)
            nbrs.setdefault(b, set()).add(a)
        object.__setattr__(self, "_nbrs", {v: frozenset(s) for v, s in nbrs.items()})

    def vertices(self) -> list[Vertex]:
        return [(i, j) for i in range(self.kappa) for j in range(self.n)]

    @property
    def parts(self) -> list[list[Vertex]]:
        return [[(i, j) for j in range(self.n)] for i in range(self.kappa)]

    def adjacent(self, a: Vertex, b: Vertex) -> bool:
        return b in self._nbrs.get(a, ())

    def neighbors(self, v: Vertex) -> frozenset[Vertex]:
        return self._nbrs.get(v, frozenset())

    def edges_between(self, i: int, j: int) -> list[tuple[Vertex, Vertex]]:
        """Edges between parts ``i`` and ``j`` oriented as (part i end, part j end)."""
        out = []
        for a in self.parts[i]:
            for b in sorted(self.neighbors(a)):
                if b[0] == j:
                    out.append((a, b))
        return out

    def to_json(self) -> dict:
        return {
            "kappa": self.kappa,
            "n": self.n,
            "r": self.r,
            "edges": [[a[0], a[1], b[0], b[1]] for a, b in sorted(self.edges)],
        }

    @classmethod
    def from_json(cls, data: dict) -> RMCInstance:
        edges = [((int(e[0]), int(e[1])), (int(e[2]), int(e[3]))) for e in data["edges"]]
        return cls(int(data["kappa"]), int(data["n"]), int(data["r"]), frozenset(edges))


def load_rmc(path: str | Path) -> RMCInstance:
    return RMCInstance.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def validate_rmc(rmc: RMCInstance) -> list[str]:
    problems = []
    for a, b in rmc.edges:
        for part, idx in (a, b):
            if not (0 <= part < rmc.kappa and 0 <= idx < rmc.n):
                return [f"vertex {(part, idx)} out of range"]
        if a[0] == b[0]:
            problems.append(f"part {a[0]} not independent")
    for v in rmc.vertices():
        counts = [0] * rmc.kappa
        for w in rmc.neighbors(v):
            counts[w[0]] += 1
        if any(counts[i] != rmc.r for i in range(rmc.kappa) if i != v[0]):
            problems.append(f"vertex degree irregular at {v}")
    return problems


def cyclic_rmc(kappa: int, n: int, shifts: dict[tuple[int, int], list[int]]) -> RMCInstance:
    """``(i, a)`` ~ ``(j, b)`` for ``i < j`` iff ``(b - a) mod n`` is one of ``shifts[i, j]``."""
    sizes = {len(set(v)) for v in shifts.values()}
    if len(sizes) != 1 or set(shifts) != {(i, j) for i in range(kappa) for j in range(i + 1, kappa)}:
        raise ValueError("need the same number of distinct shifts for every part pair")
    edges = set()
    for (i, j), ds in shifts.items():
        for a in range(n):
            for d in set(ds):
                edges.add(((i, a), (j, (a + d) % n)))
    return RMCInstance(kappa, n, sizes.pop(), frozenset(edges))


def random_rmc(kappa: int, n: int, r: int, plant_clique: bool = False, seed: int = 0) -> RMCInstance:
    """Random instance whose part pairs are relabelled circulant r-regular bipartite graphs."""
    if kappa < 2 or n < 1 or not 1 <= r <= n:
        raise ValueError(f"infeasible parameters kappa={kappa} n={n} r={r}")
    rng = random.Random(seed)
    clique = [rng.randrange(n) for _ in range(kappa)] if plant_clique else None
    edges = set()
    for i in range(kappa):
        for j in range(i + 1, kappa):
            left = list(range(n))
            right = list(range(n))
            rng.shuffle(left)
            rng.shuffle(right)
            shifts = rng.sample(range(n), r)
            pair = {(left[x], right[(x + d) % n]) for x in range(n) for d in shifts}
            if clique is not None and (clique[i], clique[j]) not in pair:
                # swap two right labels so the planted pair becomes an edge
                a, b = clique[i], clique[j]
                other = min(y for x, y in pair if x == a)
                swap = {b: other, other: b}
                pair = {(x, swap.get(y, y)) for x, y in pair}
            edges.update(((i, x), (j, y)) for x, y in pair)
    return RMCInstance(kappa, n, r, frozenset(edges))


def brute_clique(rmc: RMCInstance, limit: int = 10**7) -> tuple[int, ...] | None:
    """Lexicographically first multicolored clique as one index per part, or ``None``."""
    if rmc.n**rmc.kappa > limit:
        raise ValueError(f"n^kappa = {rmc.n ** rmc.kappa} exceeds enumeration limit {limit}")
    chosen: list[Vertex] = []

    def extend(part: int) -> bool:
        if part == rmc.kappa:
            return True
        for j in range(rmc.n):
            v = (part, j)
            if all(rmc.adjacent(u, v) for u in chosen):
                chosen.append(v)
                if extend(part + 1):
                    return True
                chosen.pop()
        return False

    return tuple(v[1] for v in chosen) if extend(0) else None


def has_clique_exhaustive(rmc: RMCInstance) -> bool:
    """Independent check: test every one-vertex-per-part tuple for pairwise adjacency."""
    for combo in itertools.product(range(rmc.n), repeat=rmc.kappa):
        vs = list(enumerate(combo))
        if all(rmc.adjacent(a, b) for a, b in itertools.combinations(vs, 2)):
            return True
    return False
