"""Selection gadget H, its collapses, and buffered rows Gamma(p, H, q).

Colors returned by :func:`mu` are 1-based (``1..kappa``); everything that
names an RMC vertex uses 0-based ``(part, index)`` pairs, so a group of color
``c`` holds copies of part ``c - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .rmc import RMCInstance

BUFFER = "buffer"
VERTEX = "vertex"
EDGE = "edge"


def mu(i: int, kappa: int) -> int:
    """Color of group ``i`` (1-based) for ``kappa`` colors, before any repair."""
    beta = 2 * kappa * kappa
    if not 1 <= i <= beta:
        raise ValueError(f"group index {i} outside [1, {beta}]")
    if i % 2 == 1:
        return 1 + (i - 1) // (2 * kappa)
    return 1 + ((i - 2) % (2 * kappa)) // 2


def mu_table(kappa: int) -> list[int]:
    return [mu(i, kappa) for i in range(1, 2 * kappa * kappa + 1)]


def check_allpairs(kappa: int, table: Sequence[int] | None = None) -> tuple[int, int] | None:
    """First ordered color pair never seen on consecutive groups, or ``None``."""
    if table is None:
        table = repaired_mu(kappa)[0]
    seen = set(zip(table, table[1:]))
    for a in range(1, kappa + 1):
        for b in range(1, kappa + 1):
            if a != b and (a, b) not in seen:
                return (a, b)
    return None


def mu_assumption_problems(table: Sequence[int], kappa: int) -> list[str]:
    problems = []
    if table[0] != 1:
        problems.append("first group is not color 1")
    if table[-1] != kappa:
        problems.append(f"last group is not color {kappa}")
    for i, (a, b) in enumerate(zip(table, table[1:])):
        if a == b:
            problems.append(f"groups {i + 1} and {i + 2} share color {a}")
    return problems


def repaired_mu(kappa: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Raw color table reordered so that no two consecutive groups share a color.

    Scanning left to right, whenever group ``i`` repeats the color of group
    ``i-1`` the nearest later group of a different color is moved to position
    ``i``. A leftover repeat on the last two groups is broken by moving the
    nearest earlier group that can leave its place without creating a new
    repeat. The last group keeps color ``kappa``. Returns the table and the
    list of ``(from, to)`` 1-based moves.
    """
    table = mu_table(kappa)
    beta = len(table)
    moves: list[tuple[int, int]] = []
    for i in range(1, beta - 1):
        if table[i] == table[i - 1]:
            j = next((j for j in range(i + 1, beta - 1) if table[j] != table[i - 1]), None)
            if j is None:
                raise RuntimeError(f"cannot repair color table for kappa={kappa}")
            table.insert(i, table.pop(j))
            moves.append((j + 1, i + 1))
    if beta > 2 and table[-1] == table[-2]:
        j = next(
            (j for j in range(beta - 3, 0, -1) if table[j] != table[-1] and table[j - 1] != table[j + 1]),
            None,
        )
        if j is None:
            raise RuntimeError(f"cannot repair color table for kappa={kappa}")
        table.insert(beta - 2, table.pop(j))
        moves.append((j + 1, beta - 1))
    return table, moves


@dataclass(frozen=True)
class LayerSpec:
    """One layer of a gadget row.

    ``color`` is the 0-based part copied by a vertex or buffer layer; for an
    edge layer it is the ordered part pair it subdivides. Members are RMC
    vertices, or ``(u, w)`` edge pairs for edge layers.
    """

    kind: str
    color: int | tuple[int, int]
    group: int | None
    members: tuple

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class GadgetH:
    layers: tuple[LayerSpec, ...]
    mu: tuple[int, ...]
    degenerate: bool
    pad: tuple[int, int] = (0, 0)
    collapsed: tuple[tuple[int, int], ...] = ()
    repair: tuple[tuple[int, int], ...] = ()

    @property
    def beta(self) -> int:
        return len(self.mu)

    @property
    def alpha(self) -> int:
        return sum(1 for L in self.layers if L.kind == VERTEX)

    def edges(self, rmc: RMCInstance) -> list[tuple[tuple[int, object], tuple[int, object]]]:
        """Edges between consecutive layers as ``((layer, image), (layer + 1, image))``."""
        out = []
        for i, (A, B) in enumerate(zip(self.layers, self.layers[1:])):
            for x, y in layer_links(A, B, rmc):
                out.append(((i, x), (i + 1, y)))
        return out


def layer_links(A: LayerSpec, B: LayerSpec, rmc: RMCInstance) -> list[tuple[object, object]]:
    """Member pairs joined when layer ``B`` directly follows layer ``A``."""
    if A.kind == EDGE:
        return [(e, y) for e in A.members for y in B.members if e[1] == y]
    if B.kind == EDGE:
        return [(x, e) for x in A.members for e in B.members if e[0] == x]
    if A.color == B.color:
        bset = set(B.members)
        return [(x, x) for x in A.members if x in bset]
    return [(x, y) for x in A.members for y in B.members if rmc.adjacent(x, y)]


def build_H(rmc: RMCInstance, degenerate: bool = False) -> GadgetH:
    kappa, n = rmc.kappa, rmc.n
    table, swaps = repaired_mu(kappa)
    problems = mu_assumption_problems(table, kappa)
    if problems:
        raise RuntimeError("color table violates gadget assumptions: " + "; ".join(problems))
    layers: list[LayerSpec] = []
    for g, color in enumerate(table):
        part = color - 1
        if degenerate and g > 0:
            prev = table[g - 1] - 1
            layers.append(LayerSpec(EDGE, (prev, part), None, tuple(rmc.edges_between(prev, part))))
        members = tuple((part, j) for j in range(n))
        layers.extend(LayerSpec(VERTEX, part, g, members) for _ in range(3))
    return GadgetH(tuple(layers), tuple(table), degenerate, repair=tuple(swaps))


def collapse(h: GadgetH, part: int, index: int) -> GadgetH:
    """Keep only the copy of ``(part, index)`` in every vertex layer of that part."""
    keep = (part, index)
    layers = tuple(
        replace(L, members=(keep,)) if L.kind == VERTEX and L.color == part else L for L in h.layers
    )
    collapsed = tuple(sorted(set(h.collapsed) | {keep}))
    return replace(h, layers=layers, collapsed=collapsed)


def build_gamma(p: int, h: GadgetH, q: int) -> GadgetH:
    """Pad ``h`` with ``p`` leading and ``q`` trailing independent-set layers."""
    if p < 0 or q < 0:
        raise ValueError("buffer lengths must be non-negative")
    n = _buffer_size(h)
    first, last = h.mu[0] - 1, h.mu[-1] - 1
    pre = LayerSpec(BUFFER, first, None, tuple((first, j) for j in range(n)))
    post = LayerSpec(BUFFER, last, None, tuple((last, j) for j in range(n)))
    layers = (pre,) * p + h.layers + (post,) * q
    return replace(h, layers=layers, pad=(h.pad[0] + p, h.pad[1] + q))


def _buffer_size(h: GadgetH) -> int:
    return max(L.size for L in h.layers if L.kind != EDGE)
