#!/usr/bin/env python3
"""Cache-hit probability versus the number of files admitted to the caches.

The central trade-off: a small pool concentrates caches on the hottest
files (high coverage per file, low request mass), a large pool covers more
of the demand but spreads each head's capacity thin.  Somewhere in between
sits the optimum.
"""

from d2dcache import NetworkParams, ZipfCatalog, hit_prob, optimize_hit, pool_grid

params = NetworkParams()

print("=== hit probability across pool sizes (exponent 1.0) ===")
cat = ZipfCatalog(500, 1.0)
for pool in (10, 20, 27, 50, 100, 250, 500):
    bar = "#" * int(60 * hit_prob(params, cat, pool))
    print(f"pool {pool:>3}: {hit_prob(params, cat, pool):.4f} {bar}")

print("\n=== the optimum moves with the popularity exponent ===")
print(f"{'exponent':>9} {'best pool':>10} {'hit prob':>9} {'vs top-10 only':>15} {'vs whole library':>17}")
for exponent in (0.5, 0.8, 1.0, 1.2, 1.4, 2.0, 3.0):
    cat = ZipfCatalog(500, exponent)
    best = optimize_hit(params, cat)
    mpc = hit_prob(params, cat, params.cache_capacity)
    eprc = hit_prob(params, cat, cat.size)
    print(
        f"{exponent:9.1f} {best.pool_size:>10} {best.objective_value:9.4f} "
        f"{mpc:15.4f} {eprc:17.4f}"
    )
print("\nSteep popularity pushes the best pool down to the cache capacity "
      "itself; flat popularity favors caching everything.")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from pathlib import Path

    out = Path("out")
    out.mkdir(exist_ok=True)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    pools = pool_grid(params, ZipfCatalog(500, 1.0))
    for exponent in (0.8, 1.0, 1.2, 1.4):
        cat = ZipfCatalog(500, exponent)
        values = hit_prob(params, cat, pools)
        (line,) = ax.plot(pools, values, label=f"exponent {exponent}")
        best = optimize_hit(params, cat)
        ax.plot([best.pool_size], [best.objective_value], "o", color=line.get_color())
    ax.set_xlabel("files admitted to the caches")
    ax.set_ylabel("cache-hit probability")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out / "hit_probability.svg")
    print(f"wrote {out / 'hit_probability.svg'}")
except ImportError:
    pass
