"""Exhaustive integer search for the best cached-file pool size."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import analytic
from .popularity import ZipfCatalog
from .spatial import NetworkParams

HIT_PROB = "hit_prob"
EC_RATIO = "ec_ratio"


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of a scan over every admissible pool size.

    ``pools`` / ``values`` retain the whole scan trace (this is exactly the
    hit-probability-versus-pool curve the sweep presets emit).
    """

    pool_size: int
    objective_value: float
    objective: str
    pools: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.pools.setflags(write=False)
        self.values.setflags(write=False)


def pool_grid(params: NetworkParams, catalog: ZipfCatalog) -> np.ndarray:
    """Every admissible pool size: capacity, capacity+1, ..., library size."""
    if params.cache_capacity > catalog.size:
        raise ValueError(
            f"cache_capacity ({params.cache_capacity}) must not exceed the "
            f"library size ({catalog.size})"
        )
    return np.arange(params.cache_capacity, catalog.size + 1)


def optimize_hit(params: NetworkParams, catalog: ZipfCatalog) -> OptimizationResult:
    """Pool size maximizing the closed-form hit probability.

    Exhaustive scan (at most library - capacity + 1 evaluations); ties are
    broken toward the smallest pool.  The objective is not provably
    unimodal, so no bisection shortcuts are taken.
    """
    pools = pool_grid(params, catalog)
    values = analytic.hit_prob(params, catalog, pools)
    i = int(np.argmax(values))  # argmax returns the first (smallest) maximizer
    return OptimizationResult(
        pool_size=int(pools[i]),
        objective_value=float(values[i]),
        objective=HIT_PROB,
        pools=pools,
        values=values,
    )


def optimize_energy(
    params: NetworkParams,
    catalog: ZipfCatalog,
    direction: str = "min",
) -> OptimizationResult:
    """Pool size minimizing the closed-form energy-consumption ratio.

    ``direction="max"`` is exposed for completeness (the opposite search
    direction over the same objective); minimization is the default and is
    what the energy-saving figures use.  Smallest-pool tie-breaking.
    """
    if direction not in ("min", "max"):
        raise ValueError(f"direction must be 'min' or 'max', got {direction!r}")
    if params.num_members == 0:
        raise ValueError("energy objective is undefined for num_members == 0")
    pools = pool_grid(params, catalog)
    values = analytic.ec_ratio(params, catalog, pools)
    i = int(np.argmin(values) if direction == "min" else np.argmax(values))
    return OptimizationResult(
        pool_size=int(pools[i]),
        objective_value=float(values[i]),
        objective=EC_RATIO,
        pools=pools,
        values=values,
    )
