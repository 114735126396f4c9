"""
Reconfiguring shortest paths
============================

A token sits on every vertex of a shortest s-t path. One move replaces a
single vertex so that the result is again a shortest path. Under token
jumping (TJ) the new vertex can be anywhere; under token sliding (TS) it
must be adjacent to the old one. The question is whether a target path Q
can be reached from a start path P, and in how few moves.
"""

# %%
from pathreconf import Graph, Model, SPInstance, oracle_solve, solve, verify_sequence

# The four-cycle: s=0, t=3, two middle vertices.
g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
tj = SPInstance(g, 0, 3, (0, 1, 3), (0, 2, 3), Model.TJ)
print(solve(tj))

# %%
# Sliding needs an edge between the two middle vertices.
ts = SPInstance(g, 0, 3, (0, 1, 3), (0, 2, 3), Model.TS)
print("TS without chord:", solve(ts).reachable)
chord = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)])
print("TS with chord:", solve(SPInstance(chord, 0, 3, (0, 1, 3), (0, 2, 3), Model.TS)).reachable)

# %%
# The oracle lists every shortest path and runs BFS over them. It is the
# reference for the faster search on small graphs.
import random

from pathreconf.generators import random_instance

rng = random.Random(3)
agree = 0
for _ in range(200):
    inst = random_instance(rng, rng.randint(5, 11), rng.choice(list(Model)))
    a, b = solve(inst), oracle_solve(inst)
    agree += (a.reachable, a.length) == (b.reachable, b.length)
print(f"solve and oracle agree on {agree}/200 random instances")

# %%
# A sequence is a list of (position, vertex) moves; verify_sequence names
# the first bad move or returns None.
res = solve(tj)
print(res.moves, verify_sequence(tj, res.moves))
print(verify_sequence(tj, [(1, 3)]))
