"""Answer-preserving reductions and the modular-width solver."""

from .cluster import cluster_deletion_kernel, compute_cluster_modulator, is_cluster_graph
from .fvs import compute_fvs, fvs_reduce
from .modular import ModularPartition, max_path_check_mw, modular_partition, modular_solve
from .pipeline import PASSES, Limits, PipelineResult, Structures, run_pipeline
from .treedepth import TreedepthDecomposition, compute_treedepth, td_flap_reduce
from .window import WindowPlan, window_plan, window_reduce

__all__ = [
    "PASSES",
    "Limits",
    "ModularPartition",
    "PipelineResult",
    "Structures",
    "TreedepthDecomposition",
    "WindowPlan",
    "cluster_deletion_kernel",
    "compute_cluster_modulator",
    "compute_fvs",
    "compute_treedepth",
    "fvs_reduce",
    "is_cluster_graph",
    "max_path_check_mw",
    "modular_partition",
    "modular_solve",
    "run_pipeline",
    "td_flap_reduce",
    "window_plan",
    "window_reduce",
]
