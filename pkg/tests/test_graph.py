import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathreconf.graph import (
    Graph,
    InstanceError,
    Model,
    SPInstance,
    Verdict,
    degeneracy,
    layered_view,
    load_instance,
    prune_to_shortest_dag,
    save_instance,
    validate_instance,
)
from pathreconf.generators import random_instance

from .support import brute_degeneracy, brute_shortest_paths, four_cycle, four_cycle_pendant, path_graph


def _write(tmp_path, data, name="inst.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return p


C4 = {"n": 4, "edges": [[0, 1], [0, 2], [1, 3], [2, 3]], "s": 0, "t": 3, "P": [0, 1, 3], "Q": [0, 2, 3], "model": "TJ"}


def test_load_four_cycle(tmp_path):
    inst = load_instance(_write(tmp_path, C4))
    assert inst.k == 2
    assert inst.model is Model.TJ
    assert inst.budget is None


def test_load_rejects_path_not_ending_at_t(tmp_path):
    with pytest.raises(InstanceError) as err:
        load_instance(_write(tmp_path, {**C4, "P": [0, 1, 2]}))
    assert any("does not end at t" in v for v in err.value.violations)


def test_load_single_edge(tmp_path):
    inst = load_instance(_write(tmp_path, {"n": 2, "edges": [[0, 1]], "s": 0, "t": 1, "P": [0, 1], "Q": [0, 1], "model": "TS"}))
    assert inst.k == 1


def test_load_malformed(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(InstanceError):
        load_instance(p)


def test_validate_messages():
    assert validate_instance(four_cycle()) == []
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    long = SPInstance(g, 0, 3, (0, 1, 3, 2), (0, 2, 3), Model.TJ)
    assert "P does not end at t" in validate_instance(long)
    g5 = Graph.from_edges(5, [(0, 1), (1, 2), (0, 3), (3, 4), (4, 2)])
    mism = SPInstance(g5, 0, 2, (0, 1, 2), (0, 3, 4, 2), Model.TJ)
    problems = validate_instance(mism)
    assert "length mismatch" in problems
    assert "Q not a shortest path" in problems


def test_validate_rejects_s_equal_t_and_disconnected():
    g = Graph.from_edges(3, [(0, 1)])
    assert "s equals t" in validate_instance(SPInstance(g, 0, 0, (0,), (0,)))
    assert "no st-path" in validate_instance(SPInstance(g, 0, 2, (0, 2), (0, 2)))


def test_graph_rejects_loops_and_duplicates():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1), (1, 0)])


def test_round_trip(tmp_path):
    rng = random.Random(4)
    for _ in range(20):
        inst = random_instance(rng, 9, rng.choice(list(Model)))
        p = tmp_path / "x.json"
        save_instance(inst, p)
        assert load_instance(p) == inst


def test_layered_view_examples():
    view = layered_view(four_cycle().graph, 0, 3)
    assert view.k == 2
    assert [sorted(layer) for layer in view.layers] == [[0], [1, 2], [3]]
    view = layered_view(path_graph(3), 0, 2)
    assert [list(layer) for layer in view.layers] == [[0], [1], [2]]
    view = layered_view(four_cycle_pendant().graph, 0, 3)
    assert all(4 not in layer for layer in view.layers)
    assert 4 not in {v for p in brute_shortest_paths(four_cycle_pendant().graph, 0, 3) for v in p}


def test_layered_view_disconnected():
    with pytest.raises(ValueError, match="no st-path"):
        layered_view(Graph.from_edges(3, [(0, 1)]), 0, 2)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32), st.integers(4, 10))
def test_layers_match_enumeration(seed, n):
    inst = random_instance(random.Random(seed), n, Model.TJ)
    view = layered_view(inst.graph, inst.s, inst.t)
    on_paths = {v for p in brute_shortest_paths(inst.graph, inst.s, inst.t) for v in p}
    assert {v for layer in view.layers for v in layer} == on_paths
    for i, layer in enumerate(view.layers[1:-1], start=1):
        for v in layer:
            assert inst.graph.adj[v] & set(view.layers[i - 1])
            assert inst.graph.adj[v] & set(view.layers[i + 1])


def test_prune_examples():
    reduced, cert = prune_to_shortest_dag(four_cycle_pendant())
    assert reduced.graph.n == 4
    assert cert.verdict is Verdict.REDUCED
    assert sorted(cert.vertex_map.values()) == [0, 1, 2, 3]
    same, cert = prune_to_shortest_dag(four_cycle())
    assert cert.verdict is Verdict.UNCHANGED
    assert same == four_cycle()


def test_prune_keeps_same_layer_edges():
    reduced, _ = prune_to_shortest_dag(four_cycle(chord=True))
    assert reduced.graph.has_edge(1, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_prune_idempotent(seed):
    inst = random_instance(random.Random(seed), 12, Model.TS)
    once, _ = prune_to_shortest_dag(inst)
    twice, cert = prune_to_shortest_dag(once)
    assert twice == once
    assert cert.verdict is Verdict.UNCHANGED


def test_degeneracy_examples():
    assert degeneracy(Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]))[0] == 1
    assert degeneracy(four_cycle().graph)[0] == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 8), st.floats(0.1, 0.9))
def test_degeneracy_matches_brute_force(seed, n, p):
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    g = Graph.from_edges(n, edges)
    d, order = degeneracy(g)
    assert d == brute_degeneracy(g)
    pos = {v: i for i, v in enumerate(order)}
    assert sorted(order) == list(range(n))
    assert all(sum(1 for w in g.adj[v] if pos[w] > pos[v]) <= d for v in range(n))
