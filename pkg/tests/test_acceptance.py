"""Acceptance suite: the eight shipping criteria, one test each.

Each test prints a single ``[PASS]``/``[FAIL]`` line (run with ``pytest -s``
to see them on success).  Criterion 4 prints a per-point comparison table
before its verdict.
"""

import time


from d2dcache import (
    CacheStrategy,
    NetworkParams,
    SimConfig,
    ZipfCatalog,
    coverage_prob,
    ec_ratio,
    expected_active_heads,
    hit_prob,
    optimize_energy,
    optimize_hit,
    simulate,
)
from d2dcache.cli import main

TABLE = NetworkParams()
GAMMA_GRID = [i / 10 for i in range(5, 21)]  # 0.5 .. 2.0


def verdict(number: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


class TestCriterion1EnergySavingGammaOne:
    def test_energy_saving_reproduction(self):
        t0 = time.perf_counter()
        base = optimize_energy(TABLE, ZipfCatalog(500, 1.0)).objective_value
        more_heads = optimize_energy(
            NetworkParams(num_heads=150), ZipfCatalog(500, 1.0)
        ).objective_value
        elapsed = time.perf_counter() - t0
        ok = 0.49 <= base <= 0.55 and 0.44 <= more_heads <= 0.50 and elapsed < 1.0
        verdict(
            1,
            ok,
            f"energy ratio at optimum {base:.4f} in [0.49,0.55] (100 heads), "
            f"{more_heads:.4f} in [0.44,0.50] (150 heads), {elapsed:.2f}s < 1s",
        )
        assert 0.49 <= base <= 0.55
        assert 0.44 <= more_heads <= 0.50
        assert elapsed < 1.0


class TestCriterion2EnergySavingGammaOnePointFour:
    def test_seventy_percent_saving(self):
        t0 = time.perf_counter()
        value = optimize_energy(TABLE, ZipfCatalog(500, 1.4)).objective_value
        elapsed = time.perf_counter() - t0
        ok = value < 0.30 and elapsed < 1.0
        verdict(2, ok, f"energy ratio at optimum {value:.4f} < 0.30, {elapsed:.2f}s < 1s")
        assert value < 0.30
        assert elapsed < 1.0


class TestCriterion3CapacityConvergence:
    def test_optimum_shrinks_to_capacity(self):
        t0 = time.perf_counter()
        steep = optimize_hit(TABLE, ZipfCatalog(500, 3.0)).pool_size
        optima = [optimize_hit(TABLE, ZipfCatalog(500, g)).pool_size for g in GAMMA_GRID]
        elapsed = time.perf_counter() - t0
        monotone = all(a >= b for a, b in zip(optima, optima[1:]))
        ok = steep == 10 and monotone and elapsed < 5.0
        verdict(
            3,
            ok,
            f"pool optimum {steep} == capacity 10 at exponent 3; non-increasing "
            f"over grid {monotone}; {elapsed:.2f}s < 5s",
        )
        assert steep == 10
        assert monotone
        assert elapsed < 5.0


class TestCriterion4OracleEquivalence:
    def test_simulation_matches_closed_forms(self):
        t0 = time.perf_counter()
        gammas = (0.5, 1.0, 1.4, 2.0)
        pools = (10, 50, 500)
        failures = []
        lines = []
        for gamma in gammas:
            catalog = ZipfCatalog(500, gamma)
            for pool in pools:
                cfg = SimConfig(
                    trials=400,  # 400 trials x 250 members = 1e5 samples
                    seed=20_250_000 + int(gamma * 10) * 1000 + pool,
                    strategy=CacheStrategy.top(pool),
                )
                sim = simulate(TABLE, catalog, cfg)
                closed = {
                    "hit_rate": (hit_prob(TABLE, catalog, pool), sim.hit_rate),
                    "active_heads": (
                        expected_active_heads(TABLE, catalog, pool),
                        sim.active_heads,
                    ),
                    "ec_ratio": (ec_ratio(TABLE, catalog, pool), sim.ec_ratio),
                }
                for name, (model, est) in closed.items():
                    gap = abs(est.value - model)
                    tol = 3 * est.halfwidth
                    status = "ok" if gap <= tol else "OUT"
                    lines.append(
                        f"    gamma={gamma:<4} pool={pool:<4} {name:<13} "
                        f"model={model:10.4f} sim={est.value:10.4f} "
                        f"|gap|={gap:8.4f} 3hw={tol:8.4f} {status}"
                    )
                    if gap > tol:
                        failures.append((gamma, pool, name, gap, tol))
        elapsed = time.perf_counter() - t0
        print()
        for line in lines:
            print(line)
        ok = not failures and elapsed < 120.0
        verdict(
            4,
            ok,
            f"{36 - len(failures)}/36 comparisons within 3 half-widths on the "
            f"12-point grid ({elapsed:.1f}s < 120s)"
            + (
                ""
                if not failures
                else "; outside: "
                + ", ".join(f"{n}@(gamma={g},pool={p})" for g, p, n, _, _ in failures)
            ),
        )
        assert elapsed < 120.0
        assert not failures, (
            "simulation and closed forms disagree beyond 3 half-widths at: "
            + "; ".join(
                f"gamma={g} pool={p} {n} (gap {gap:.4f} vs tol {tol:.4f})"
                for g, p, n, gap, tol in failures
            )
        )


class TestCriterion5TruncationConsistency:
    def test_truncated_sums_match_closed_exponentials(self):
        t0 = time.perf_counter()
        worst = 0.0
        for pool in (10, 27, 50, 100, 500):
            p = TABLE.cache_capacity / pool
            for mean, cutoff in ((6.25, TABLE.num_heads), (15.625, TABLE.num_members)):
                gap = abs(coverage_prob(p, mean, truncation=cutoff) - coverage_prob(p, mean))
                worst = max(worst, gap)
        elapsed = time.perf_counter() - t0
        ok = worst < 1e-8 and elapsed < 1.0
        verdict(5, ok, f"max |truncated - closed| = {worst:.2e} < 1e-8, {elapsed:.2f}s < 1s")
        assert worst < 1e-8
        assert elapsed < 1.0


class TestCriterion6StrategyOrdering:
    def test_optimized_pool_dominates_baselines(self):
        t0 = time.perf_counter()
        ok_all = True
        for gamma in GAMMA_GRID:
            catalog = ZipfCatalog(500, gamma)
            best = optimize_hit(TABLE, catalog).objective_value
            mpc = hit_prob(TABLE, catalog, TABLE.cache_capacity)
            eprc = hit_prob(TABLE, catalog, catalog.size)
            ok_all = ok_all and best >= mpc and best >= eprc
        elapsed = time.perf_counter() - t0
        ok = ok_all and elapsed < 5.0
        verdict(
            6,
            ok,
            f"optimized hit probability dominates top-capacity and whole-library "
            f"baselines at every grid exponent; {elapsed:.2f}s < 5s",
        )
        assert ok_all
        assert elapsed < 5.0


class TestCriterion7ZeroEnergyIdentity:
    def test_energy_free_optimum_equals_hit_optimum(self):
        t0 = time.perf_counter()
        params = NetworkParams(energy_factor=0.0)
        mismatches = []
        for gamma in GAMMA_GRID:
            catalog = ZipfCatalog(500, gamma)
            lec = optimize_energy(params, catalog).pool_size
            lhp = optimize_hit(params, catalog).pool_size
            if lec != lhp:
                mismatches.append((gamma, lec, lhp))
        elapsed = time.perf_counter() - t0
        ok = not mismatches and elapsed < 5.0
        verdict(
            7,
            ok,
            f"zero-energy-factor optimizer identity holds at all "
            f"{len(GAMMA_GRID)} grid exponents; {elapsed:.2f}s < 5s",
        )
        assert not mismatches
        assert elapsed < 5.0


class TestCriterion8SweepDeterminism:
    def test_fig4_byte_identical_across_worker_pools(self, tmp_path):
        t0 = time.perf_counter()
        out1, out2 = tmp_path / "a", tmp_path / "b"
        args = ["sweep", "--preset", "fig4", "--seed", "42"]
        assert main(args + ["--out", str(out1), "--workers", "1"]) == 0
        assert main(args + ["--out", str(out2), "--workers", "3"]) == 0
        first = (out1 / "fig4.csv").read_bytes()
        second = (out2 / "fig4.csv").read_bytes()
        elapsed = time.perf_counter() - t0
        ok = first == second and elapsed < 120.0
        verdict(
            8,
            ok,
            f"fig4 CSVs byte-identical across runs and worker-pool sizes "
            f"({len(first)} bytes, {elapsed:.1f}s < 120s)",
        )
        assert first == second
        assert elapsed < 120.0
