#!/usr/bin/env python3
"""Zipf request popularity: shapes, top-rank mass, and sampling.

Walks through the request model that drives everything else: how the
popularity exponent concentrates demand on the top-ranked files, and how
fast empirical request frequencies converge to the law.
"""

import numpy as np

from d2dcache import ZipfCatalog

LIBRARY = 500

print("=== request probability of the top ranks ===")
print(f"{'exponent':>9} {'rank 1':>9} {'rank 10':>9} {'rank 100':>9} {'top-50 mass':>12}")
for exponent in (0.0, 0.5, 1.0, 1.4, 2.0):
    cat = ZipfCatalog(LIBRARY, exponent)
    print(
        f"{exponent:9.1f} {cat.pmf(1):9.4f} {cat.pmf(10):9.4f} "
        f"{cat.pmf(100):9.5f} {cat.top_mass(50):12.4f}"
    )

print()
print("With exponent 1.4 half of all requests go to the "
      f"{int(np.searchsorted(ZipfCatalog(LIBRARY, 1.4).top_mass(np.arange(1, 501)), 0.5)) + 1} "
      "most popular files out of 500.")

print()
print("=== sampling converges to the law ===")
cat = ZipfCatalog(LIBRARY, 1.0)
rng = np.random.default_rng(0)
for n in (1_000, 10_000, 100_000, 1_000_000):
    draws = cat.sample(rng, n)
    freq = (draws == 1).mean()
    print(f"n={n:>9,}: empirical rank-1 frequency {freq:.5f} (model {cat.pmf(1):.5f})")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from pathlib import Path

    out = Path("out")
    out.mkdir(exist_ok=True)
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    ranks = np.arange(1, LIBRARY + 1)
    for exponent in (0.5, 1.0, 1.4, 2.0):
        c = ZipfCatalog(LIBRARY, exponent)
        left.loglog(ranks, c.probabilities, label=f"exponent {exponent}")
        right.plot(ranks, c.top_mass(ranks), label=f"exponent {exponent}")
    left.set_xlabel("rank"); left.set_ylabel("request probability"); left.legend()
    right.set_xlabel("top ranks counted"); right.set_ylabel("cumulative request mass")
    fig.tight_layout()
    fig.savefig(out / "popularity.svg")
    print(f"\nwrote {out / 'popularity.svg'}")
except ImportError:
    pass
