"""Compile RMC instances into shortest-path reconfiguration instances.

Every variant stacks rows between two fixed st-paths P and Q. A row is a
buffered gadget ``Gamma(p, H, q)`` whose ``p``-th layer sits at path position
``p``; s is joined to the first layer of every row and t to the last one.
Rows are listed from P to Q:

    P, G*, G1,1 .. G1,n, G1,*, G2,1 .. Gk,*, Q

and a token that reaches Q has passed through one row of every level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..graph import Graph, Model, SPInstance
from .gadgets import BUFFER, EDGE, GadgetH, LayerSpec, build_gamma, build_H, collapse, layer_links, mu_table
from .rmc import RMCInstance, brute_clique

Move = tuple[int, int]

VARIANTS = ("tj", "ts", "tj-degenerate")


@dataclass(frozen=True)
class Row:
    name: str
    level: int
    gadget: GadgetH | None  # None for the P and Q rows


@dataclass(frozen=True)
class VertexRecord:
    v: int
    row: str
    layer: int
    image: str

    def to_json(self) -> dict:
        return {"v": self.v, "row": self.row, "layer": self.layer, "image": self.image}


@dataclass
class ReductionLayout:
    variant: str
    kappa: int
    rows: list[Row]
    records: list[VertexRecord]
    mu: list[int]
    mu_raw: list[int]
    mu_repair: list[tuple[int, int]]
    clique: tuple[int, ...] | None = None
    witness: list[Move] | None = None
    extra: dict = field(default_factory=dict)

    @property
    def row_levels(self) -> dict[str, int]:
        return {r.name: r.level for r in self.rows}

    def vertex_levels(self) -> list[int]:
        """Row level of every vertex; s sits below every row and t above."""
        levels = self.row_levels
        top = max(levels.values()) + 1
        return [{"s": -1, "t": top}.get(r.row, levels.get(r.row)) for r in self.records]

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "kappa": self.kappa,
            "rows": [r.name for r in self.rows],
            "row_levels": self.row_levels,
            "row_pads": {r.name: list(r.gadget.pad) for r in self.rows if r.gadget is not None},
            "collapses": {
                r.name: [list(c) for c in r.gadget.collapsed]
                for r in self.rows
                if r.gadget is not None and r.gadget.collapsed
            },
            "vertex_records": [r.to_json() for r in self.records],
            "mu": list(self.mu),
            "mu_raw": list(self.mu_raw),
            "mu_repair": [list(m) for m in self.mu_repair],
            "clique": None if self.clique is None else list(self.clique),
            "witness": None if self.witness is None else [list(m) for m in self.witness],
            **self.extra,
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), sort_keys=True) + "\n", encoding="utf-8")

    @classmethod
    def from_json(cls, data: dict) -> ReductionLayout:
        """Rebuild a layout from its JSON form; gadget details are not restored."""
        levels = data["row_levels"]
        rows = [Row(name, int(levels[name]), None) for name in data["rows"]]
        records = [VertexRecord(int(r["v"]), r["row"], int(r["layer"]), r["image"]) for r in data["vertex_records"]]
        witness = data.get("witness")
        clique = data.get("clique")
        return cls(
            data["variant"],
            int(data["kappa"]),
            rows,
            records,
            list(data["mu"]),
            list(data["mu_raw"]),
            [tuple(m) for m in data["mu_repair"]],
            None if clique is None else tuple(clique),
            None if witness is None else [tuple(m) for m in witness],
        )


def load_layout(path: str | Path) -> ReductionLayout:
    return ReductionLayout.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def image_label(kind: str, member) -> str:
    if kind == EDGE:
        (a, b), (c, d) = member
        return f"{a}:{b}-{c}:{d}"
    if kind == BUFFER:
        return f"buf:{member[1]}"
    return f"{member[0]}:{member[1]}"


class _Builder:
    """Allocates vertex ids in a fixed order and collects edges and records."""

    def __init__(self, rmc: RMCInstance, k: int):
        self.rmc = rmc
        self.k = k
        self.records: list[VertexRecord] = []
        self.edges: set[tuple[int, int]] = set()
        self.cells: dict[str, list[dict]] = {}  # row -> per position (1-based) member -> vertex id

    def vertex(self, row: str, layer: int, image: str) -> int:
        v = len(self.records)
        self.records.append(VertexRecord(v, row, layer, image))
        return v

    def edge(self, u: int, v: int) -> None:
        self.edges.add((min(u, v), max(u, v)))

    def add_row(self, name: str, gadget: GadgetH) -> None:
        if len(gadget.layers) != self.k - 1:
            raise AssertionError(f"row {name} has {len(gadget.layers)} layers, expected {self.k - 1}")
        cells: list[dict] = [{}]
        for p, L in enumerate(gadget.layers, start=1):
            cells.append({m: self.vertex(name, p, image_label(L.kind, m)) for m in L.members})
        self.cells[name] = cells
        for m in cells[1].values():
            self.edge(0, m)
        for m in cells[-1].values():
            self.edge(1, m)
        for p, (A, B) in enumerate(zip(gadget.layers, gadget.layers[1:]), start=1):
            for x, y in layer_links(A, B, self.rmc):
                self.edge(cells[p][x], cells[p + 1][y])

    def graph(self) -> Graph:
        return Graph.from_edges(len(self.records), sorted(self.edges))


def _check_aligned(lower: LayerSpec, upper: LayerSpec, where: str) -> None:
    """Consecutive-position layers of adjacent rows must copy the same layer of H."""
    a, b = set(lower.members), set(upper.members)
    if lower.kind != upper.kind or lower.color != upper.color or not (a <= b or b <= a):
        raise AssertionError(f"misaligned rows at {where}")


def _link_shifted(b: _Builder, lower: Row, upper: Row) -> None:
    """Layer p of the later row meets layer p + 1 of the earlier row on equal images."""
    low, up = b.cells[lower.name], b.cells[upper.name]
    for p in range(1, b.k - 1):
        A, B = lower.gadget.layers[p - 1], upper.gadget.layers[p]
        _check_aligned(A, B, f"{lower.name}[{p}] / {upper.name}[{p + 1}]")
        for m, v in low[p].items():
            if m in up[p + 1]:
                b.edge(v, up[p + 1][m])


def _link_aligned(b: _Builder, lower: Row, upper: Row) -> None:
    """Vertical matchings on equal layers plus diagonals wired like a row's own layers."""
    low, up = b.cells[lower.name], b.cells[upper.name]
    for p in range(1, b.k):
        A, B = lower.gadget.layers[p - 1], upper.gadget.layers[p - 1]
        _check_aligned(A, B, f"{lower.name}[{p}] / {upper.name}[{p}]")
        for m, v in low[p].items():
            if m in up[p]:
                b.edge(v, up[p][m])
        if p < b.k - 1:
            nxt = upper.gadget.layers[p]
            for x, y in layer_links(A, nxt, b.rmc):
                b.edge(low[p][x], up[p + 1][y])


def _rows(rmc: RMCInstance, h: GadgetH, pad: int, shift: bool) -> list[Row]:
    """The gadget rows in P-to-Q order, each shifted one layer left of the previous."""
    kappa, n = rmc.kappa, rmc.n
    d = 1 if shift else 0
    rows = [Row("G*", 1, build_gamma(pad, h, pad))]
    for i in range(1, kappa + 1):
        for j in range(1, n + 1):
            g = collapse(h, i - 1, j - 1)
            rows.append(Row(f"G{i},{j}", 2 * i, build_gamma(pad - d * (2 * i - 1), g, pad + d * (2 * i - 1))))
        rows.append(Row(f"G{i},*", 2 * i + 1, build_gamma(pad - d * 2 * i, h, pad + d * 2 * i)))
    return rows


def _neighbours(rows: list[Row], kappa: int, n: int) -> list[tuple[Row, Row]]:
    """(later, earlier) row pairs that get inter-row edges."""
    by = {r.name: r for r in rows}
    out = []
    for i in range(1, kappa + 1):
        above = by["G*"] if i == 1 else by[f"G{i - 1},*"]
        below = by[f"G{i},*"]
        for j in range(1, n + 1):
            mid = by[f"G{i},{j}"]
            out.append((mid, above))
            out.append((below, mid))
    return out


def _clique_path(row: Row, clique: tuple[int, ...]) -> list:
    """Member chosen at every position of ``row`` by a properly colored path."""
    out = [None]
    for L in row.gadget.layers:
        if L.kind == EDGE:
            a, b = L.color
            choice = ((a, clique[a]), (b, clique[b]))
        else:
            choice = (L.color, clique[L.color])
        if choice not in L.members:
            raise AssertionError(f"clique member missing from row {row.name}")
        out.append(choice)
    return out


def _witness(b: _Builder, rows: list[Row], clique: tuple[int, ...], Q: list[int]) -> list[Move]:
    """Ascending sweeps P -> G* -> G1,j1 -> G1,* -> ... -> Gk,* -> Q."""
    by = {r.name: r for r in rows}
    kappa = len(clique)
    order = ["G*"]
    for i in range(1, kappa + 1):
        order += [f"G{i},{clique[i - 1] + 1}", f"G{i},*"]
    moves: list[Move] = []
    for name in order:
        cells = b.cells[name]
        chosen = _clique_path(by[name], clique)
        moves.extend((p, cells[p][chosen[p]]) for p in range(1, b.k))
    moves.extend((p, Q[p]) for p in range(1, b.k))
    return moves


def _build(rmc: RMCInstance, variant: str) -> tuple[SPInstance, ReductionLayout, list[Move] | None]:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if rmc.kappa < 2:
        raise ValueError("need kappa >= 2")
    kappa, n = rmc.kappa, rmc.n
    degenerate = variant == "tj-degenerate"
    h = build_H(rmc, degenerate)
    if variant == "ts":
        pad = 3
    elif degenerate:
        pad = 8 * kappa * kappa
    else:
        pad = 2 * kappa * kappa
    delta = 2 * pad + len(h.layers)
    k = delta + 1

    b = _Builder(rmc, k)
    s = b.vertex("s", 0, "s")
    t = b.vertex("t", k, "t")
    P = [s] + [b.vertex("P", p, "path") for p in range(1, k)] + [t]
    Q = [s] + [b.vertex("Q", p, "path") for p in range(1, k)] + [t]
    for path in (P, Q):
        for u, v in zip(path, path[1:]):
            b.edge(u, v)
    rows = _rows(rmc, h, pad, shift=variant != "ts")
    for row in rows:
        b.add_row(row.name, row.gadget)
    first, last = b.cells[rows[0].name], b.cells[rows[-1].name]
    if variant == "ts":
        for lower, upper in _neighbours(rows, kappa, n):
            _link_aligned(b, lower, upper)
        # P and Q also get vertical edges so their tokens can slide off and on
        for p in range(1, k):
            for v in first[p].values():
                b.edge(P[p], v)
                b.edge(P[p + 1], v)
            for v in last[p].values():
                b.edge(Q[p], v)
                b.edge(Q[p - 1], v)
    else:
        for lower, upper in _neighbours(rows, kappa, n):
            _link_shifted(b, lower, upper)
        for p in range(2, k):
            for v in first[p - 1].values():
                b.edge(P[p], v)
            for v in last[p].values():
                b.edge(Q[p - 1], v)

    try:
        clique = brute_clique(rmc)
    except ValueError:
        clique = None
    witness = _witness(b, rows, clique, Q) if clique is not None else None

    model = Model.TS if variant == "ts" else Model.TJ
    inst = SPInstance(b.graph(), s, t, tuple(P), tuple(Q), model)
    all_rows = [Row("P", 0, None)] + rows + [Row("Q", 2 * kappa + 2, None)]
    layout = ReductionLayout(
        variant,
        kappa,
        all_rows,
        b.records,
        list(h.mu),
        mu_table(kappa),
        list(h.repair),
        clique,
        witness,
    )
    return inst, layout, witness


def build_tj_instance(rmc: RMCInstance):
    """Token-jumping instance; the witness has ``20 * (kappa**3 + kappa**2)`` moves."""
    return _build(rmc, "tj")


def build_ts_instance(rmc: RMCInstance):
    """Token-sliding instance with aligned ``Gamma(3, H, 3)`` rows and vertical matchings."""
    return _build(rmc, "ts")


def build_tj_degenerate_instance(rmc: RMCInstance):
    """Token-jumping instance on a 4-degenerate graph, using edge layers inside H."""
    return _build(rmc, "tj-degenerate")


def build_instance(rmc: RMCInstance, variant: str):
    return _build(rmc, variant)
