"""Run a list of reduction passes and keep the certificates needed to lift answers back."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..graph import KernelCertificate, SPInstance, Verdict, identity_certificate, lift_through, prune_to_shortest_dag
from ..solver import DEFAULT_STATE_CAP, SolveResult
from .cluster import cluster_deletion_kernel, compute_cluster_modulator
from .fvs import compute_fvs, fvs_reduce
from .modular import modular_solve
from .treedepth import TreedepthDecomposition, compute_treedepth, td_flap_reduce
from .window import window_reduce

PASSES = ("prune", "window", "fvs", "cluster", "treedepth", "mw-solve")


@dataclass
class Structures:
    """Optional user-supplied structure, in vertex ids of the input instance."""

    fvs: frozenset[int] | None = None
    cluster: frozenset[int] | None = None
    treedepth: TreedepthDecomposition | None = None
    width: int | None = None


@dataclass
class Limits:
    """Search bounds for structure discovery when nothing is supplied."""

    fvs_size: int = 6
    cluster_size: int = 4
    treedepth: int = 6
    width: int = 5
    state_cap: int = DEFAULT_STATE_CAP
    path_cap: int = 50_000


@dataclass
class PipelineResult:
    instance: SPInstance
    certificates: list[KernelCertificate] = field(default_factory=list)
    result: SolveResult | None = None  # set when a pass settled the question
    stopped_by: str | None = None

    def lift(self, moves: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
        return lift_through(self.certificates, moves)

    def log(self) -> list[dict]:
        return [c.to_json() for c in self.certificates]


def parse_passes(passes: str | Sequence[str]) -> list[str]:
    names = [s.strip() for s in passes.split(",")] if isinstance(passes, str) else list(passes)
    names = [s for s in names if s]
    unknown = [s for s in names if s not in PASSES]
    if unknown:
        raise ValueError(f"unknown pass {unknown[0]!r}; choose from {', '.join(PASSES)}")
    if "mw-solve" in names[:-1]:
        raise ValueError("mw-solve settles the instance and must be the last pass")
    return names


def _originals(cur: dict, v) -> tuple[int, ...]:
    o = cur[v]
    return o if isinstance(o, tuple) else (o,)


def run_pipeline(
    inst: SPInstance,
    passes: str | Sequence[str],
    structures: Structures | None = None,
    limits: Limits | None = None,
) -> PipelineResult:
    """Apply ``passes`` in order; stops early on ``DecidedNo`` or after ``mw-solve``."""
    names = parse_passes(passes)
    structures = structures or Structures()
    limits = limits or Limits()
    out = PipelineResult(inst)
    cur = inst
    origin: dict[int, int | tuple[int, ...]] = {v: v for v in range(inst.graph.n)}

    for name in names:
        if name == "mw-solve":
            width = structures.width if structures.width is not None else limits.width
            res = modular_solve(cur, width, limits.path_cap)
            if res.moves is not None:
                res.moves = out.lift(res.moves)
            res.stats["width"] = width
            out.result, out.stopped_by = res, name
            break
        if name == "prune":
            nxt, cert = prune_to_shortest_dag(cur)
        elif name == "window":
            nxt, cert = window_reduce(cur)
        elif name == "fvs":
            if structures.fvs is not None:
                F = {v for v in range(cur.graph.n) if structures.fvs.intersection(_originals(origin, v))}
            else:
                F = compute_fvs(cur.graph, limits.fvs_size)
            if F is None:
                nxt, cert = cur, identity_certificate(name, cur)
                cert.notes["skipped"] = f"no feedback vertex set of size <= {limits.fvs_size}"
            else:
                nxt, cert = fvs_reduce(cur, F)
        elif name == "cluster":
            if structures.cluster is not None:
                C = {v for v in range(cur.graph.n) if structures.cluster.intersection(_originals(origin, v))}
            else:
                C = compute_cluster_modulator(cur.graph, limits.cluster_size)
            if C is None:
                nxt, cert = cur, identity_certificate(name, cur)
                cert.notes["skipped"] = f"no cluster modulator of size <= {limits.cluster_size}"
            else:
                nxt, cert = cluster_deletion_kernel(cur, C)
        else:
            td = None
            if structures.treedepth is not None and all(isinstance(o, int) for o in origin.values()):
                td = structures.treedepth.restrict([origin[v] for v in range(cur.graph.n)])
            if td is None:
                td = compute_treedepth(cur.graph, limits.treedepth)
            if td is None:
                nxt, cert = cur, identity_certificate(name, cur)
                cert.notes["skipped"] = f"treedepth exceeds {limits.treedepth}"
            else:
                nxt, cert = td_flap_reduce(cur, td)
        cert.pass_name = name
        out.certificates.append(cert)
        if cert.verdict is Verdict.DECIDED_NO:
            out.result = SolveResult(False, stats={"decided_by": name, **cert.notes})
            out.stopped_by = name
            break
        if cert.verdict is Verdict.REDUCED:
            origin = {v: _expand(origin, m) for v, m in cert.vertex_map.items()}
        cur = nxt
    out.instance = cur
    return out


def _expand(origin: dict, m):
    if isinstance(m, tuple):
        return tuple(x for y in m for x in _originals(origin, y))
    return origin[m]
