"""Regular Multicolored Clique instances and their compilation into reconfiguration instances."""

from .construct import (
    VARIANTS,
    ReductionLayout,
    build_instance,
    build_tj_degenerate_instance,
    build_tj_instance,
    build_ts_instance,
    load_layout,
)
from .gadgets import check_allpairs, mu, mu_table, repaired_mu
from .rmc import RMCInstance, brute_clique, cyclic_rmc, load_rmc, random_rmc, validate_rmc

__all__ = [
    "VARIANTS",
    "RMCInstance",
    "ReductionLayout",
    "brute_clique",
    "build_instance",
    "build_tj_degenerate_instance",
    "build_tj_instance",
    "build_ts_instance",
    "check_allpairs",
    "cyclic_rmc",
    "load_layout",
    "load_rmc",
    "mu",
    "mu_table",
    "random_rmc",
    "repaired_mu",
    "validate_rmc",
]
