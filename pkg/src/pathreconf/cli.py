"""Command-line front end.

Exit codes: 0 yes / valid, 1 no / invalid sequence, 2 unknown (a cap was
hit), 3 bad input. Results go to stdout or ``--out`` as JSON; diagnostics
go to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Sequence

from .graph import InstanceError, Model, SPInstance, degeneracy, layered_view, load_instance, save_instance
from .kernels.pipeline import Limits, Structures, run_pipeline
from .kernels.treedepth import TreedepthDecomposition
from .solver import DEFAULT_STATE_CAP, SolveResult, enumerate_shortest_paths, oracle_solve, solve, solve_bounded, solve_monotone, verify_sequence

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_INVALID = 0, 1, 2, 3


class UsageError(Exception):
    """Bad input; reported on stderr with exit code 3."""


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _vertex_set(text: str) -> frozenset[int]:
    return frozenset(int(x) for x in text.split(",") if x.strip())


def _exit_for(res: SolveResult) -> int:
    return {True: EXIT_YES, False: EXIT_NO, None: EXIT_UNKNOWN}[res.reachable]


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(args) -> SPInstance:
    inst = load_instance(args.instance)
    changes = {}
    if getattr(args, "model", None):
        changes["model"] = Model(args.model)
    if getattr(args, "budget", None) is not None:
        changes["budget"] = args.budget
    return dataclasses.replace(inst, **changes) if changes else inst


def _structures(args) -> Structures:
    td = None
    if getattr(args, "treedepth", None):
        data = json.loads(Path(args.treedepth).read_text(encoding="utf-8"))
        parent = data["parent"] if isinstance(data, dict) else data
        td = TreedepthDecomposition(tuple(None if p is None else int(p) for p in parent))
    return Structures(
        fvs=getattr(args, "fvs", None),
        cluster=getattr(args, "cluster", None),
        treedepth=td,
        width=getattr(args, "width", None),
    )


def _limits(args) -> Limits:
    return Limits(state_cap=args.state_cap, path_cap=args.path_cap)


def cmd_solve(args) -> int:
    inst = _load(args)
    log: list[dict] = []
    lift = None
    if args.passes:
        pipe = run_pipeline(inst, args.passes, _structures(args), _limits(args))
        log = pipe.log()
        if pipe.result is not None:
            res = pipe.result
            _emit({"seed": args.seed, "result": res.to_json(), "reductions": log}, args.out)
            return _exit_for(res)
        inst, lift = pipe.instance, pipe.lift
    if args.layout:
        from .reduction.construct import load_layout

        if args.passes:
            raise UsageError("--layout cannot be combined with --passes (vertex ids would no longer match)")
        res = solve_monotone(inst, load_layout(args.layout), args.state_cap, allow_unproven=args.allow_unproven)
    elif inst.budget is not None:
        res = solve_bounded(inst, inst.budget, args.state_cap)
    else:
        res = solve(inst, args.state_cap, method=args.method)
    if lift is not None and res.moves is not None:
        res.moves = lift(res.moves)
        res.length = len(res.moves)
    _emit({"seed": args.seed, "result": res.to_json(), "reductions": log}, args.out)
    return _exit_for(res)


def cmd_oracle(args) -> int:
    inst = _load(args)
    res = oracle_solve(inst, args.path_cap)
    _emit({"seed": args.seed, "result": res.to_json()}, args.out)
    return _exit_for(res)


def cmd_kernelize(args) -> int:
    if not args.passes:
        raise UsageError("kernelize needs --passes")
    inst = _load(args)
    if "window" in args.passes and inst.budget is None:
        raise UsageError("the window pass needs a move budget (--budget)")
    pipe = run_pipeline(inst, args.passes, _structures(args), _limits(args))
    payload = {"seed": args.seed, "reductions": pipe.log()}
    if pipe.result is not None:
        payload["result"] = pipe.result.to_json()
        payload["stopped_by"] = pipe.stopped_by
        code = _exit_for(pipe.result)
    else:
        red = pipe.instance
        payload["reduced"] = {"n": red.graph.n, "m": red.graph.m, "k": red.k}
        if args.out:
            save_instance(red, args.out)
            payload["instance_file"] = args.out
        else:
            payload["instance"] = red.to_json()
        code = EXIT_YES
    if args.log:
        Path(args.log).write_text(json.dumps(payload["reductions"], sort_keys=True, indent=2) + "\n", encoding="utf-8")
    _emit(payload, None)
    return code


def cmd_generate(args) -> int:
    from .reduction.construct import build_instance
    from .reduction.rmc import load_rmc, random_rmc, validate_rmc

    if args.rmc:
        rmc = load_rmc(args.rmc)
    else:
        if args.kappa is None or args.n is None:
            raise UsageError("give --rmc FILE or --kappa and --n")
        rmc = random_rmc(args.kappa, args.n, args.r if args.r is not None else 1, args.plant, seed=args.seed)
    bad = validate_rmc(rmc)
    if bad:
        raise UsageError("invalid RMC instance: " + "; ".join(bad[:3]))
    inst, layout, witness = build_instance(rmc, args.variant)
    deg = degeneracy(inst.graph)[0]
    layout.extra["degeneracy"] = deg
    layout.extra["seed"] = args.seed
    prefix = Path(args.out or f"{args.variant}-k{rmc.kappa}-n{rmc.n}")
    files = {"instance": f"{prefix}.instance.json", "layout": f"{prefix}.layout.json"}
    save_instance(inst, files["instance"])
    layout.save(files["layout"])
    if witness is not None:
        files["witness"] = f"{prefix}.witness.json"
        Path(files["witness"]).write_text(json.dumps({"moves": [list(m) for m in witness]}) + "\n", encoding="utf-8")
    summary = {
        "seed": args.seed,
        "variant": args.variant,
        "kappa": rmc.kappa,
        "n": rmc.n,
        "r": rmc.r,
        "vertices": inst.graph.n,
        "edges": inst.graph.m,
        "k": inst.k,
        "degeneracy": deg,
        "clique": None if layout.clique is None else list(layout.clique),
        "witness_length": None if witness is None else len(witness),
        "files": files,
    }
    _emit(summary, None)
    return EXIT_YES


def _read_moves(path: str) -> list:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("result", data)
        data = data.get("moves") if isinstance(data, dict) else None
    if not isinstance(data, list):
        raise UsageError("sequence file must hold a list of [position, vertex] moves")
    return data


def cmd_verify(args) -> int:
    inst = _load(args)
    moves = _read_moves(args.sequence)
    problem = verify_sequence(inst, moves)
    payload = {"seed": args.seed, "valid": problem is None, "moves": len(moves)}
    if problem is not None:
        payload["violation"] = {"index": problem.index, "reason": problem.reason}
        print(f"invalid sequence: {problem}", file=sys.stderr)
    _emit(payload, args.out)
    return EXIT_YES if problem is None else EXIT_NO


def cmd_stats(args) -> int:
    inst = _load(args)
    view = layered_view(inst.graph, inst.s, inst.t)
    paths, complete = enumerate_shortest_paths(inst.graph, inst.s, inst.t, args.path_cap)
    payload = {
        "seed": args.seed,
        "n": inst.graph.n,
        "m": inst.graph.m,
        "k": view.k,
        "model": inst.model.value,
        "budget": inst.budget,
        "layer_sizes": [len(layer) for layer in view.layers],
        "off_path_vertices": inst.graph.n - sum(len(layer) for layer in view.layers),
        "shortest_paths": len(paths) if complete else f">{args.path_cap}",
        "degeneracy": degeneracy(inst.graph)[0],
        "differing_positions": sum(1 for a, b in zip(inst.P, inst.Q) if a != b),
    }
    _emit(payload, args.out)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathreconf", description="Shortest-path reconfiguration toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, instance: bool = True) -> None:
        if instance:
            p.add_argument("instance", help="instance JSON file")
            p.add_argument("--model", choices=[m.value for m in Model], help="override the instance's model")
            p.add_argument("--budget", type=int, help="move budget for the length-bounded question")
        p.add_argument("--seed", type=int, default=0, help="64-bit seed, echoed in every output")
        p.add_argument("--out", help="write the JSON result here instead of stdout")
        p.add_argument("--state-cap", type=_positive, default=DEFAULT_STATE_CAP)
        p.add_argument("--path-cap", type=_positive, default=50_000)

    def structure(p: argparse.ArgumentParser) -> None:
        p.add_argument("--passes", help="comma-separated passes: prune,window,fvs,cluster,treedepth,mw-solve")
        p.add_argument("--fvs", type=_vertex_set, help="feedback vertex set, e.g. 3,7")
        p.add_argument("--cluster", type=_vertex_set, help="cluster-deletion modulator")
        p.add_argument("--treedepth", help="JSON file with a parent array")
        p.add_argument("--width", type=_positive, help="modular width bound for mw-solve")

    p = sub.add_parser("solve", help="decide reachability and find a shortest sequence")
    common(p)
    structure(p)
    p.add_argument("--method", choices=["astar", "bfs"], default="astar")
    p.add_argument("--layout", help="layout JSON of a generated instance: use the monotone search")
    p.add_argument("--allow-unproven", action="store_true", help="monotone search on variants without a completeness proof")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force answer over all shortest paths")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("kernelize", help="run reduction passes and write the reduced instance")
    common(p)
    structure(p)
    p.add_argument("--log", help="write the certificate log here")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("generate", help="compile a multicolored clique instance")
    common(p, instance=False)
    p.add_argument("--rmc", help="RMC JSON file")
    p.add_argument("--kappa", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--plant", action="store_true", help="plant a multicolored clique")
    p.add_argument("--variant", choices=["tj", "ts", "tj-degenerate"], default="tj")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="replay a move sequence")
    common(p)
    p.add_argument("sequence", help="JSON list of [position, vertex] moves, or a solve/witness file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="layer sizes, path count and degeneracy")
    common(p)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_YES
    try:
        return args.func(args)
    except (InstanceError, UsageError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, InstanceError):
            for v in exc.violations:
                print(f"  {v}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
