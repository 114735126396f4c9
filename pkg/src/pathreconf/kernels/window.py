"""Shrink an ℓ-bounded instance to the positions a short sequence can touch.

A sequence of at most ℓ moves changes at most ℓ positions. Dropping every
run of consecutive changed positions that contains no position where P and
Q differ still leaves a valid sequence, so the remaining runs each contain
such a position and are at most ℓ long. Every changed position therefore
lies within ℓ - 1 of a differing position. All other positions keep their
P-vertex throughout and each maximal run of them is replaced by one edge.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import KernelCertificate, SPInstance, Verdict, identity_certificate, layered_view, prune_to_shortest_dag
from ._common import compose, relabel


@dataclass(frozen=True)
class WindowPlan:
    S: tuple[int, ...]
    I_S: tuple[int, ...]
    empty_intervals: tuple[tuple[int, int], ...]
    radius: int


def window_plan(inst: SPInstance, budget: int) -> WindowPlan:
    k = inst.k
    S = tuple(p for p in range(k + 1) if inst.P[p] != inst.Q[p])
    radius = max(budget - 1, 0)
    I_S = tuple(sorted({q for p in S for q in range(p - radius, p + radius + 1) if 0 <= q <= k}))
    inside = set(I_S)
    intervals = []
    p = 0
    while p <= k:
        if p in inside:
            p += 1
            continue
        a = p
        while p + 1 <= k and p + 1 not in inside:
            p += 1
        intervals.append((a, p))
        p += 1
    return WindowPlan(S, I_S, tuple(intervals), radius)


def window_reduce(inst: SPInstance) -> tuple[SPInstance, KernelCertificate]:
    """Equivalent instance for the question "at most ``inst.budget`` moves?".

    Returns ``DecidedNo`` when more than ℓ positions differ. The reduced
    instance has ``dist(s, t) <= 4 * ℓ**2`` for ℓ >= 1.
    """
    if inst.budget is None:
        raise ValueError("window reduction needs a move budget")
    budget = inst.budget
    if inst.k <= 2:
        return inst, identity_certificate("window", inst)
    base, pcert = prune_to_shortest_dag(inst)
    plan = window_plan(base, budget)
    notes = {"S": list(plan.S), "I_S": list(plan.I_S), "empty_intervals": [list(iv) for iv in plan.empty_intervals]}
    if len(plan.S) > budget:
        notes["reason"] = f"{len(plan.S)} differing positions exceed budget {budget}"
        return inst, KernelCertificate("window", Verdict.DECIDED_NO, notes=notes)

    view = layered_view(base.graph, base.s, base.t)
    keep_positions: list[int] = []
    keep: list[int] = []
    extra = []
    single = []
    inside = set(plan.I_S)
    for p in range(base.k + 1):
        if p in inside:
            keep_positions.append(p)
            keep.extend(view.layers[p])
    for a, b in plan.empty_intervals:
        assert all(base.P[p] == base.Q[p] for p in (a, b)), "P and Q differ outside the window"
        keep_positions.extend({a, b})
        keep.extend({base.P[a], base.P[b]})
        if a == b:
            single.append(a)
        elif b > a + 1:
            extra.append((base.P[a], base.P[b]))
    keep_positions.sort()
    notes["length_one_intervals"] = single
    if len(keep_positions) == base.k + 1:
        return inst, identity_certificate("window", inst)

    P = [base.P[p] for p in keep_positions]
    Q = [base.Q[p] for p in keep_positions]
    reduced, old = relabel(base, keep, extra, P=P, Q=Q)
    reduced, pr = prune_to_shortest_dag(reduced)
    local = KernelCertificate(
        "window",
        Verdict.REDUCED,
        {v: old[pr.vertex_map[v]] for v in range(reduced.graph.n)},
        tuple(keep_positions),
    )
    if reduced.k != len(keep_positions) - 1:
        raise AssertionError("contracted instance has the wrong distance")
    return reduced, compose(pcert, local, "window", Verdict.REDUCED, notes)
