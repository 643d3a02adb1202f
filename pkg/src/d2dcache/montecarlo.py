"""Spatial Monte Carlo estimator, built independently of the closed forms.

Each trial places heads and members in the region, fills the head caches,
draws one Zipf request per member and then reads the three quantities
directly off the realization:

  hit      a member's request is cached by some head within the D2D radius
  active   a head has at least one in-range member requesting a cached file
  energy   (1 - trial hit rate) + energy_factor * active count / members

Per-trial statistics are aggregated into means with 95% normal-approximation
intervals.  Every random stream is derived from (seed, trial index, stream
tag), so results are identical for any worker count or schedule, and remain
coupled across runs that only change the head count (the first k heads of a
larger deployment match the smaller one).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .caching import CacheStrategy, assign_caches
from .popularity import ZipfCatalog
from .spatial import TORUS, DISK, NetworkParams, Region, in_range_matrix, Deployment

_STREAM_HEADS = 0
_STREAM_MEMBERS = 1
_STREAM_CACHES = 2
_STREAM_REQUESTS = 3

Z95 = 1.96


@dataclass(frozen=True)
class SimConfig:
    """Statistical specification of one simulation run.

    ``trials`` independent deployments; ``requests_per_trial`` request
    redraws on each fixed deployment (cheap extra samples that share the
    trial's geometry and caches).
    """

    trials: int
    seed: int
    strategy: CacheStrategy
    requests_per_trial: int = 1
    region_mode: str = TORUS

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.requests_per_trial < 1:
            raise ValueError(
                f"requests_per_trial must be >= 1, got {self.requests_per_trial}"
            )
        if self.region_mode not in (TORUS, DISK):
            raise ValueError(f"region_mode must be '{TORUS}' or '{DISK}'")


@dataclass(frozen=True)
class Estimate:
    """Point estimate with a 95% half-width (nan when degenerate)."""

    value: float
    halfwidth: float


@dataclass(frozen=True)
class SimResult:
    hit_rate: Estimate
    active_heads: Estimate
    ec_ratio: Estimate
    samples: int  # total member-request draws


def confidence_halfwidth(samples) -> float:
    """95% normal half-width: 1.96 * sample std / sqrt(n).

    Returns 0.0 when all samples are equal and nan for n == 1 (a single
    sample carries no spread information; the nan flags the degenerate
    interval in results).
    """
    x = np.asarray(samples, dtype=np.float64)
    n = x.size
    if n == 0:
        raise ValueError("need at least one sample")
    if n == 1:
        return float("nan")
    s = float(x.std(ddof=1))
    return 0.0 if s == 0.0 else Z95 * s / math.sqrt(n)


def trial_rng(seed: int, trial: int, stream: int) -> np.random.Generator:
    """Counter-based stream split: independent generator per (trial, role)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, trial, stream))))


def _run_trial(
    params: NetworkParams,
    catalog: ZipfCatalog,
    config: SimConfig,
    region: Region,
    trial: int,
) -> tuple[float, float, float]:
    heads = region.sample(trial_rng(config.seed, trial, _STREAM_HEADS), params.num_heads)
    members = region.sample(trial_rng(config.seed, trial, _STREAM_MEMBERS), params.num_members)
    deployment = Deployment(heads=heads, members=members, region=region)
    assignment = assign_caches(
        config.strategy, params, catalog, trial_rng(config.seed, trial, _STREAM_CACHES)
    )
    in_range = in_range_matrix(deployment, params.d2d_radius)  # (members, heads)
    cache_mask = assignment.mask()  # (heads, library)
    req_rng = trial_rng(config.seed, trial, _STREAM_REQUESTS)

    hit_sum = 0.0
    active_sum = 0.0
    for _ in range(config.requests_per_trial):
        requests = catalog.sample(req_rng, params.num_members)  # (members,)
        if params.num_heads == 0:
            hit_rate = 0.0
            active = 0
        else:
            # served[h, j]: head h is in range of member j and caches j's request
            served = in_range.T & cache_mask[:, requests - 1]
            hit_rate = float(served.any(axis=0).mean())
            active = int(served.any(axis=1).sum())
        hit_sum += hit_rate
        active_sum += active
    rounds = config.requests_per_trial
    hit_mean = hit_sum / rounds
    active_mean = active_sum / rounds
    ec = (1.0 - hit_mean) + params.energy_factor * active_mean / params.num_members
    return hit_mean, active_mean, ec


def simulate(
    params: NetworkParams,
    catalog: ZipfCatalog,
    config: SimConfig,
    workers: int = 1,
) -> SimResult:
    """Estimate hit rate, active-head count and energy ratio by direct
    spatial simulation.

    Deterministic for a fixed ``config.seed`` regardless of ``workers``:
    trials write into their own slots and every stream derives from the
    trial index alone.
    """
    if params.num_members == 0:
        raise ValueError("simulation requires num_members >= 1")
    region = Region(config.region_mode, params.cell_radius)
    stats = np.empty((config.trials, 3), dtype=np.float64)

    def run(trial: int) -> None:
        stats[trial] = _run_trial(params, catalog, config, region, trial)

    if workers <= 1:
        for t in range(config.trials):
            run(t)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(config.trials)))

    def estimate(col: int) -> Estimate:
        return Estimate(
            value=float(stats[:, col].mean()),
            halfwidth=confidence_halfwidth(stats[:, col]),
        )

    return SimResult(
        hit_rate=estimate(0),
        active_heads=estimate(1),
        ec_ratio=estimate(2),
        samples=config.trials * config.requests_per_trial * params.num_members,
    )
