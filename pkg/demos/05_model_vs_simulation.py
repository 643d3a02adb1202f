#!/usr/bin/env python3
"""Closed forms against the spatial Monte Carlo, including where they part ways.

The simulator is built from the geometry up (points, caches, requests) and
shares no code path with the closed forms, so agreement is meaningful.
Three findings:

1. The hit probability matches everywhere to within Monte Carlo noise.
2. The energy ratio matches within noise at the reference scale.
3. The active-head count only matches while every head caches the same
   files (pool == capacity).  For larger pools the closed form plugs the
   *average* cached request mass into its coverage exponent, but a head
   serves all its neighbors from one fixed cache draw; averaging before
   exponentiating overstates activity (Jensen's inequality), increasingly
   so as popularity concentrates.
"""

import numpy as np

from d2dcache import (
    CacheStrategy,
    NetworkParams,
    SimConfig,
    ZipfCatalog,
    expected_active_heads,
    ec_ratio,
    hit_prob,
    simulate,
)

params = NetworkParams()

print(f"{'exponent':>8} {'pool':>5} | {'hit model':>9} {'hit sim':>9} | "
      f"{'active model':>12} {'active sim':>10} | {'ec model':>9} {'ec sim':>9}")
for exponent in (0.5, 1.0, 2.0):
    catalog = ZipfCatalog(500, exponent)
    for pool in (10, 50, 500):
        cfg = SimConfig(trials=300, seed=7, strategy=CacheStrategy.top(pool))
        sim = simulate(params, catalog, cfg)
        print(
            f"{exponent:8.1f} {pool:>5} | "
            f"{hit_prob(params, catalog, pool):9.4f} {sim.hit_rate.value:9.4f} | "
            f"{expected_active_heads(params, catalog, pool):12.2f} "
            f"{sim.active_heads.value:10.2f} | "
            f"{ec_ratio(params, catalog, pool):9.4f} {sim.ec_ratio.value:9.4f}"
        )

print("""
Hit and energy columns track each other; the active-head model column
drifts above the simulation once caches are random subsets of a large
pool (worst at exponent 2.0, pool 50).""")

print("=== why: the cached mass of one head is far from its average ===")
catalog = ZipfCatalog(500, 2.0)
rng = np.random.default_rng(0)
draws = 100_000
subsets = np.argpartition(rng.random((draws, 50)), 9, axis=1)[:, :10]
masses = catalog.probabilities[subsets].sum(axis=1)
q = (params.d2d_radius / params.cell_radius) ** 2
print(f"cached request mass over random 10-of-top-50 caches: "
      f"mean {masses.mean():.3f}, std {masses.std():.3f}")
exact = params.num_heads * np.mean(1 - (1 - q * masses) ** params.num_members)
plugged = params.num_heads * (1 - np.exp(-params.member_intensity * masses.mean()))
print(f"exact cache-averaged active heads: {exact:6.2f}")
print(f"mean-field closed form:            {plugged:6.2f}")
print("The simulator agrees with the exact cache-averaged value; the gap "
      "is a property of the closed form, not simulation noise.")
