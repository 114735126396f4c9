"""Shortest-path reconfiguration: solvers, kernels and hardness-gadget generators."""

from .graph import (
    Graph,
    InstanceError,
    KernelCertificate,
    LayeredView,
    Model,
    SPInstance,
    Verdict,
    degeneracy,
    layered_view,
    lift_through,
    load_instance,
    prune_to_shortest_dag,
    save_instance,
    validate_instance,
)
from .solver import (
    SequenceViolation,
    SolveResult,
    enumerate_shortest_paths,
    neighbors,
    oracle_solve,
    solve,
    solve_bounded,
    solve_monotone,
    verify_sequence,
)

__all__ = [
    "Graph",
    "InstanceError",
    "KernelCertificate",
    "LayeredView",
    "Model",
    "SPInstance",
    "SequenceViolation",
    "SolveResult",
    "Verdict",
    "degeneracy",
    "enumerate_shortest_paths",
    "layered_view",
    "lift_through",
    "load_instance",
    "neighbors",
    "oracle_solve",
    "prune_to_shortest_dag",
    "save_instance",
    "solve",
    "solve_bounded",
    "solve_monotone",
    "validate_instance",
    "verify_sequence",
]
