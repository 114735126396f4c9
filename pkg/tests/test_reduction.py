import itertools
import json
import random
from collections import Counter

import pytest

from pathreconf.generators import random_shortest_path
from pathreconf.graph import Model, degeneracy, layered_view
from pathreconf.reduction import (
    VARIANTS,
    brute_clique,
    build_instance,
    build_tj_degenerate_instance,
    build_tj_instance,
    build_ts_instance,
    check_allpairs,
    cyclic_rmc,
    load_layout,
    mu,
    mu_table,
    random_rmc,
    repaired_mu,
    validate_rmc,
)
from pathreconf.reduction.gadgets import BUFFER, EDGE, VERTEX, build_gamma, build_H, collapse, layer_links, mu_assumption_problems
from pathreconf.reduction.rmc import RMCInstance, has_clique_exhaustive
from pathreconf.solver import solve, solve_monotone, verify_sequence

TRIANGLE_FREE = {(0, 1): [0], (0, 2): [0], (1, 2): [1]}


def no_clique(n):
    return cyclic_rmc(3, n, TRIANGLE_FREE)


# colour table


def test_mu_examples():
    assert mu_table(2) == [1, 1, 1, 2, 2, 1, 2, 2]
    assert all(mu(1, k) == 1 for k in range(2, 20))
    raw = mu_table(2)
    assert (raw[2], raw[3]) == (1, 2)
    assert (raw[4], raw[5]) == (2, 1)
    with pytest.raises(ValueError):
        mu(9, 2)


@pytest.mark.parametrize("kappa", range(2, 51))
def test_repaired_table(kappa):
    table, moves = repaired_mu(kappa)
    assert check_allpairs(kappa) is None
    assert check_allpairs(kappa, table) is None
    assert mu_assumption_problems(table, kappa) == []
    assert Counter(table) == Counter(mu_table(kappa))
    assert all(1 <= a <= len(table) and 1 <= b <= len(table) for a, b in moves)


def test_repair_small():
    table, moves = repaired_mu(2)
    assert table == [1, 2, 1, 2, 1, 2, 1, 2]
    assert moves == [(4, 2), (5, 4), (7, 6)]


def test_check_allpairs_negative_control():
    table = repaired_mu(3)[0]
    assert check_allpairs(3, [1, 2, 1, 2, 3, 2, 3]) is not None
    broken = [c if c != 3 else 2 for c in table]
    assert check_allpairs(3, broken) == (1, 3)


# RMC instances


def test_validate_rmc_examples():
    matching = RMCInstance(2, 2, 1, frozenset({((0, 0), (1, 0)), ((0, 1), (1, 1))}))
    assert validate_rmc(matching) == []
    extra = RMCInstance(2, 2, 1, matching.edges | {((0, 0), (1, 1))})
    assert any("irregular" in p for p in validate_rmc(extra))
    full = RMCInstance(2, 3, 3, frozenset(((0, a), (1, b)) for a in range(3) for b in range(3)))
    assert validate_rmc(full) == []


def test_random_rmc_properties():
    for seed in range(20):
        rmc = random_rmc(3, 4, 2, plant_clique=True, seed=seed)
        assert validate_rmc(rmc) == []
        assert brute_clique(rmc) is not None
        assert random_rmc(3, 4, 2, plant_clique=True, seed=seed) == rmc
    with pytest.raises(ValueError):
        random_rmc(2, 2, 3)


def test_triangle_free():
    rmc = cyclic_rmc(3, 3, TRIANGLE_FREE)
    assert validate_rmc(rmc) == []
    assert brute_clique(rmc) is None
    assert not has_clique_exhaustive(rmc)


def test_brute_clique_kappa_two_is_any_edge():
    rmc = random_rmc(2, 3, 1, seed=3)
    a, b = brute_clique(rmc)
    assert rmc.adjacent((0, a), (1, b))


def test_brute_clique_guard():
    with pytest.raises(ValueError):
        brute_clique(random_rmc(4, 10, 2, seed=0), limit=1000)


@pytest.mark.parametrize("seed", range(30))
def test_brute_clique_matches_exhaustive(seed):
    rng = random.Random(seed)
    rmc = random_rmc(3, rng.randint(2, 4), 1, seed=seed)
    assert (brute_clique(rmc) is not None) == has_clique_exhaustive(rmc)


# gadgets


def test_build_H_sizes():
    rmc = random_rmc(2, 2, 1, seed=0)
    h = build_H(rmc)
    assert h.alpha == 24 and len(h.layers) == 24
    assert all(L.size == 2 for L in h.layers)
    d = build_H(rmc, degenerate=True)
    assert len(d.layers) == 31
    assert d.alpha == 24


def test_intra_group_matchings():
    rmc = random_rmc(3, 3, 2, seed=1)
    h = build_H(rmc)
    for g in range(h.beta):
        a, b, c = h.layers[3 * g : 3 * g + 3]
        assert len(layer_links(a, b, rmc)) + len(layer_links(b, c, rmc)) == 2 * rmc.n


def test_cross_group_links_mirror_rmc():
    rmc = random_rmc(3, 3, 2, seed=2)
    h = build_H(rmc)
    for A, B in zip(h.layers, h.layers[1:]):
        if A.group != B.group:
            links = set(layer_links(A, B, rmc))
            assert links == {(x, y) for x in A.members for y in B.members if rmc.adjacent(x, y)}


def test_collapse():
    rmc = random_rmc(2, 2, 1, seed=0)
    h = build_H(rmc)
    c = collapse(h, 0, 0)
    assert all(L.size == (1 if L.color == 0 else 2) for L in c.layers)
    assert collapse(c, 0, 0) == c
    assert {m for L in c.layers if L.color == 0 for m in L.members} == {(0, 0)}
    d = collapse(build_H(rmc, degenerate=True), 0, 0)
    assert all(L.size == 2 for L in d.layers if L.kind == EDGE)


def test_build_gamma():
    rmc = random_rmc(2, 2, 1, seed=0)
    h = build_H(rmc)
    assert build_gamma(0, h, 0).layers == h.layers
    g = build_gamma(2, h, 2)
    assert len(g.layers) == len(h.layers) + 4
    assert g.layers[0].kind == BUFFER and g.layers[2].kind == VERTEX
    assert layer_links(g.layers[1], g.layers[2], rmc) == [(m, m) for m in g.layers[2].members]


def _colored_path_exists(rmc, h):
    """Some choice of one vertex per colour that survives every link of H."""
    for choice in itertools.product(range(rmc.n), repeat=rmc.kappa):
        picks = []
        for L in h.layers:
            if L.kind == EDGE:
                a, b = L.color
                picks.append(((a, choice[a]), (b, choice[b])))
            else:
                picks.append((L.color, choice[L.color]))
        if all((x, y) in set(layer_links(A, B, rmc)) for A, B, x, y in zip(h.layers, h.layers[1:], picks, picks[1:])):
            return True
    return False


@pytest.mark.parametrize("seed", range(8))
def test_properly_colored_path_iff_clique(seed):
    rmc = random_rmc(3, 3, 1, plant_clique=seed % 2 == 0, seed=seed)
    for degenerate in (False, True):
        assert _colored_path_exists(rmc, build_H(rmc, degenerate)) == (brute_clique(rmc) is not None)


# constructions


@pytest.fixture(scope="module")
def planted():
    return random_rmc(2, 2, 1, plant_clique=True, seed=11)


def test_tj_instance(planted):
    inst, layout, witness = build_tj_instance(planted)
    assert len(inst.P) == 10 * 2**2 + 2 == len(inst.Q)
    assert inst.model is Model.TJ
    assert len(witness) == 240
    assert verify_sequence(inst, witness) is None
    view = layered_view(inst.graph, inst.s, inst.t)
    assert len(layout.records) == inst.graph.n
    assert all(r.layer == view.dist_s[r.v] for r in layout.records)
    assert all(view.on_shortest_path(v) for v in range(inst.graph.n) if layout.records[v].image != "s")


def test_ts_instance(planted):
    inst, layout, witness = build_ts_instance(planted)
    assert len(inst.P) == 6 * 2**2 + 8
    assert inst.model is Model.TS
    assert len(witness) == 180 and verify_sequence(inst, witness) is None
    row_of = [r.row for r in layout.records]
    layer_of = [r.layer for r in layout.records]
    gadget_rows = {r.name for r in layout.rows if r.gadget is not None}
    for v in range(inst.graph.n):
        if row_of[v] not in gadget_rows:
            continue
        per_row = Counter(row_of[w] for w in inst.graph.adj[v] if layer_of[w] == layer_of[v] and row_of[w] != row_of[v])
        assert all(c <= 1 for r, c in per_row.items() if r in gadget_rows)


def test_degenerate_instance(planted):
    inst, layout, witness = build_tj_degenerate_instance(planted)
    assert len(inst.P) - 2 == 24 * 2**2 - 1
    assert degeneracy(inst.graph)[0] <= 4
    assert verify_sequence(inst, witness) is None


@pytest.mark.parametrize("variant", VARIANTS)
def test_no_witness_without_clique(variant):
    inst, layout, witness = build_instance(no_clique(2), variant)
    assert witness is None and layout.clique is None


@pytest.mark.parametrize("variant", VARIANTS)
def test_paths_descend_through_rows(variant, planted):
    """Along a shortest path the row level never rises and a row left is never re-entered."""
    inst, layout, _ = build_instance(planted, variant)
    level = layout.vertex_levels()
    rows = [r.row for r in layout.records]
    rng = random.Random(0)
    for _ in range(200):
        path = random_shortest_path(rng, inst.graph, inst.s, inst.t)
        inner = path[1:-1]
        assert all(0 <= level[a] - level[b] <= 1 for a, b in zip(inner, inner[1:]))
        seen = [rows[inner[0]]]
        for v in inner[1:]:
            if rows[v] != seen[-1]:
                assert rows[v] not in seen
                seen.append(rows[v])


def test_unknown_variant(planted):
    with pytest.raises(ValueError):
        build_instance(planted, "planar")


def test_generation_is_deterministic(planted, tmp_path):
    a = build_tj_instance(planted)
    b = build_tj_instance(planted)
    assert a[0] == b[0]
    a[1].save(tmp_path / "a.json")
    b[1].save(tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


# monotone search


def test_monotone_yes(planted):
    inst, layout, _ = build_tj_instance(planted)
    res = solve_monotone(inst, layout)
    assert res.reachable and res.length == 240
    assert verify_sequence(inst, res.moves) is None


@pytest.mark.parametrize("n", [2, 3])
def test_monotone_no(n):
    inst, layout, _ = build_tj_instance(no_clique(n))
    assert solve_monotone(inst, layout).reachable is False


def test_monotone_kappa_three_yes():
    rmc = random_rmc(3, 2, 1, plant_clique=True, seed=5)
    inst, layout, witness = build_tj_instance(rmc)
    res = solve_monotone(inst, layout)
    assert res.length == 20 * (27 + 9) == len(witness)


def test_monotone_guards(planted, tmp_path):
    inst, layout, _ = build_ts_instance(planted)
    with pytest.raises(ValueError, match="unproven"):
        solve_monotone(inst, layout)
    assert solve_monotone(inst, layout, allow_unproven=True).length == 180
    tj, tj_layout, _ = build_tj_instance(planted)
    with pytest.raises(ValueError, match="cover"):
        solve_monotone(tj, layout)
    tj_layout.save(tmp_path / "layout.json")
    again = load_layout(tmp_path / "layout.json")
    assert solve_monotone(tj, again).length == 240
    data = json.loads((tmp_path / "layout.json").read_text())
    assert data["mu"] == [1, 2, 1, 2, 1, 2, 1, 2] and data["mu_raw"] == mu_table(2)


@pytest.mark.parametrize("variant", ["ts", "tj-degenerate"])
def test_monotone_matches_solve_on_other_variants(variant, planted):
    inst, layout, _ = build_instance(planted, variant)
    a = solve(inst)
    b = solve_monotone(inst, layout, allow_unproven=True)
    assert (a.reachable, a.length) == (b.reachable, b.length)
