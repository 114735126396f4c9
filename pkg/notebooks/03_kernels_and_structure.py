"""
Shrinking instances with structure
==================================

Each pass returns a smaller equivalent instance plus a certificate that
maps moves back to the original graph.
"""

# %%
import random

from pathreconf import Graph, Model, SPInstance, solve, solve_bounded, verify_sequence
from pathreconf.generators import bounded_treedepth_graph, cluster_modulator_graph, layered_instance, modular_instance
from pathreconf.kernels import (
    TreedepthDecomposition,
    cluster_deletion_kernel,
    compute_fvs,
    fvs_reduce,
    modular_solve,
    run_pipeline,
    td_flap_reduce,
    window_reduce,
)

rng = random.Random(5)

# %%
# Window: with a budget of l moves only positions near a difference between
# P and Q can change, so long stretches in between collapse to single edges.
# A path 0..30 where Q takes a parallel detour at positions 4 and 25.
edges = [(i, i + 1) for i in range(30)] + [(3, 31), (31, 5), (24, 32), (32, 26)]
Q = list(range(31))
Q[4], Q[25] = 31, 32
inst = SPInstance(Graph.from_edges(33, edges), 0, 30, tuple(range(31)), tuple(Q), Model.TJ, budget=2)
reduced, cert = window_reduce(inst)
print(cert.verdict.value, f"k {inst.k} -> {reduced.k}", "differing positions:", cert.notes["S"])
print("same bounded answer:", solve_bounded(inst, 2).reachable == solve_bounded(reduced, 2).reachable)

# %%
# Feedback vertex set: away from F the shortest-path graph is a forest, and
# runs of forced positions merge.
inst = layered_instance(rng, 14, 2, 0.3, Model.TJ, same_layer=0.0)
F = compute_fvs(inst.graph, 8)
reduced, cert = fvs_reduce(inst, F)
print(f"|F|={len(F)}", cert.verdict.value, f"k {inst.k} -> {reduced.k}")
a, b = solve(inst), solve(reduced)
print("lengths:", a.length, b.length)
if b.reachable:
    print("lifted sequence valid:", verify_sequence(inst, cert.lift_moves(b.moves)) is None)

# %%
# Cluster deletion and treedepth: many interchangeable cliques or subtrees,
# only a bounded number of which can ever be used at once.
while True:
    sample = cluster_modulator_graph(rng, 2, 30, 2, Model.TJ)
    if sample is None:
        continue
    reduced, cert = cluster_deletion_kernel(sample.instance, sample.modulator)
    if reduced.graph.n < sample.instance.graph.n:
        break
print("cluster:", sample.instance.graph.n, "->", reduced.graph.n, "vertices")

sample = None
while sample is None:
    sample = bounded_treedepth_graph(rng, 25, 4, 0.4, Model.TJ)
reduced, cert = td_flap_reduce(sample.instance, TreedepthDecomposition(sample.parent))
print("treedepth:", sample.instance.graph.n, "->", reduced.graph.n, "vertices")

# %%
# Modular width: graphs built by substituting modules into small quotients
# are solved exactly by working on the quotient.
inst = None
while inst is None:
    inst = modular_instance(rng, 30, 4, Model.TS, min_dist=3)
print(modular_solve(inst, 4))

# %%
# Passes chain; the pipeline keeps the certificates and lifts at the end.
inst = layered_instance(rng, 12, 3, 0.35, Model.TJ, same_layer=0.05, noise=4)
out = run_pipeline(inst, "prune,fvs,treedepth")
for entry in out.log():
    print(entry["pass"], entry["verdict"])
res = solve(out.instance)
print("answer:", res.reachable, "lifted valid:", res.reachable is False or verify_sequence(inst, out.lift(res.moves)) is None)
