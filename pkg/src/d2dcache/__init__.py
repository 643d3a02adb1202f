"""Cache-enabled multicast D2D network model.

Zipf content popularity, Poisson cluster-coverage closed forms for the
cache-hit probability, active-cluster count and energy-consumption ratio,
exhaustive optimizers for the cached-pool size, and an independent spatial
Monte Carlo validator with torus and disk regions.
"""

__version__ = "0.1.0"

from .analytic import (
    AnalyticReport,
    analytic_report,
    coverage_prob,
    d2d_service_prob,
    ec_ratio,
    expected_active_heads,
    hit_prob,
    poisson_pmf,
)
from .caching import CacheAssignment, CacheStrategy, assign_caches, head_caches_file
from .experiments import Config, parse_config, run_sweep
from .montecarlo import (
    Estimate,
    SimConfig,
    SimResult,
    confidence_halfwidth,
    simulate,
)
from .optimize import OptimizationResult, optimize_energy, optimize_hit, pool_grid
from .popularity import ZipfCatalog
from .spatial import (
    DISK,
    TORUS,
    Deployment,
    NetworkParams,
    Region,
    in_range_matrix,
    neighbors_within,
    sample_deployment,
)

__all__ = [
    "__version__",
    "AnalyticReport",
    "CacheAssignment",
    "CacheStrategy",
    "Config",
    "Deployment",
    "DISK",
    "Estimate",
    "NetworkParams",
    "OptimizationResult",
    "Region",
    "SimConfig",
    "SimResult",
    "TORUS",
    "ZipfCatalog",
    "analytic_report",
    "assign_caches",
    "confidence_halfwidth",
    "coverage_prob",
    "d2d_service_prob",
    "ec_ratio",
    "expected_active_heads",
    "head_caches_file",
    "hit_prob",
    "in_range_matrix",
    "neighbors_within",
    "optimize_energy",
    "optimize_hit",
    "parse_config",
    "poisson_pmf",
    "pool_grid",
    "run_sweep",
    "sample_deployment",
    "simulate",
]
