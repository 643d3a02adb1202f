"""Geometry: intensities, deployments, range queries, edge effects."""

import math

import numpy as np
import pytest
from scipy import stats

from d2dcache import (
    DISK,
    TORUS,
    Deployment,
    NetworkParams,
    Region,
    in_range_matrix,
    neighbors_within,
    sample_deployment,
)

TABLE = NetworkParams()  # reference setup


class TestIntensities:
    def test_reference_values(self):
        # 100 * (50/200)^2 and 250 * (50/200)^2
        assert TABLE.head_intensity == 6.25
        assert TABLE.member_intensity == 15.625

    def test_no_heads(self):
        assert NetworkParams(num_heads=0).head_intensity == 0.0

    def test_cluster_covers_cell(self):
        p = NetworkParams(d2d_radius=200.0)
        assert p.head_intensity == pytest.approx(100.0)
        assert p.member_intensity == pytest.approx(250.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            NetworkParams(d2d_radius=0)
        with pytest.raises(ValueError):
            NetworkParams(d2d_radius=300.0, cell_radius=200.0)
        with pytest.raises(ValueError):
            NetworkParams(num_heads=-1)
        with pytest.raises(ValueError):
            NetworkParams(cache_capacity=0)
        with pytest.raises(ValueError):
            NetworkParams(energy_factor=-0.5)


class TestDeployment:
    def test_counts_and_region_bounds(self):
        rng = np.random.default_rng(0)
        dep = sample_deployment(TABLE, TORUS, rng)
        assert dep.heads.shape == (100, 2)
        assert dep.members.shape == (250, 2)
        side = math.sqrt(math.pi) * TABLE.cell_radius
        assert np.all(dep.heads >= 0) and np.all(dep.heads < side)

    def test_disk_points_inside_cell(self):
        dep = sample_deployment(TABLE, DISK, np.random.default_rng(1))
        radii = np.linalg.norm(dep.heads, axis=1)
        assert np.all(radii <= TABLE.cell_radius)

    def test_empty_deployment(self):
        p = NetworkParams(num_heads=0, num_members=0)
        dep = sample_deployment(p, TORUS, np.random.default_rng(2))
        assert dep.heads.shape == (0, 2) and dep.members.shape == (0, 2)

    def test_deterministic_replay(self):
        a = sample_deployment(TABLE, TORUS, np.random.default_rng(99))
        b = sample_deployment(TABLE, TORUS, np.random.default_rng(99))
        np.testing.assert_array_equal(a.heads, b.heads)
        np.testing.assert_array_equal(a.members, b.members)

    def test_positions_immutable(self):
        dep = sample_deployment(TABLE, TORUS, np.random.default_rng(3))
        with pytest.raises(ValueError):
            dep.heads[0, 0] = 0.0

    def test_mean_in_range_heads_matches_intensity(self):
        # 1e4 deployments, one uniformly drawn member each: mean in-range
        # head count should match the intensity 6.25 within 3 standard errors
        rng = np.random.default_rng(2024)
        counts = np.empty(10_000)
        for i in range(counts.size):
            dep = sample_deployment(TABLE, TORUS, rng)
            member = dep.members[rng.integers(TABLE.num_members)]
            counts[i] = neighbors_within(dep, member, TABLE.d2d_radius).size
        se = counts.std(ddof=1) / math.sqrt(counts.size)
        assert abs(counts.mean() - TABLE.head_intensity) < 3 * se

    def test_in_range_count_fits_poisson(self):
        # chi-square goodness of fit against Poisson(6.25) at the 1% level;
        # cells pooled to expected counts >= 5 ({<=1}, 2..13, {>=14})
        rng = np.random.default_rng(42)
        n = 1000
        counts = np.empty(n, dtype=int)
        for i in range(n):
            dep = sample_deployment(TABLE, TORUS, rng)
            member = dep.members[rng.integers(TABLE.num_members)]
            counts[i] = neighbors_within(dep, member, TABLE.d2d_radius).size
        pmf = stats.poisson.pmf(np.arange(15), TABLE.head_intensity)
        expected = np.concatenate([[pmf[:2].sum()], pmf[2:14], [1.0 - pmf[:14].sum()]]) * n
        observed = np.concatenate(
            [
                [np.sum(counts <= 1)],
                [np.sum(counts == k) for k in range(2, 14)],
                [np.sum(counts >= 14)],
            ]
        )
        stat = np.sum((observed - expected) ** 2 / expected)
        critical = stats.chi2.ppf(0.99, df=expected.size - 1)
        assert stat < critical


class TestNeighborsWithin:
    def test_empty(self):
        p = NetworkParams(num_heads=0, num_members=0)
        dep = sample_deployment(p, TORUS, np.random.default_rng(0))
        assert neighbors_within(dep, (0.0, 0.0), 50.0).size == 0

    def test_single_head_at_query_point(self):
        region = Region(TORUS, 200.0)
        dep = Deployment(
            heads=np.array([[10.0, 20.0]]), members=np.zeros((0, 2)), region=region
        )
        assert list(neighbors_within(dep, (10.0, 20.0), 1.0)) == [0]

    @pytest.mark.parametrize("mode", [TORUS, DISK])
    def test_matches_brute_force(self, mode):
        # O(n^2) oracle written independently with explicit wrap logic
        params = NetworkParams(num_heads=100, num_members=40)
        dep = sample_deployment(params, mode, np.random.default_rng(8))
        side = dep.region.side
        radius = 60.0

        def brute(point):
            out = []
            for i, (hx, hy) in enumerate(dep.heads):
                dx, dy = abs(hx - point[0]), abs(hy - point[1])
                if mode == TORUS:
                    dx, dy = min(dx, side - dx), min(dy, side - dy)
                if math.hypot(dx, dy) <= radius:
                    out.append(i)
            return out

        for member in dep.members:
            got = list(neighbors_within(dep, member, radius))
            assert got == brute(member)

    def test_range_symmetry(self):
        # a in range of b <=> b in range of a
        params = NetworkParams(num_heads=60, num_members=60)
        dep = sample_deployment(params, TORUS, np.random.default_rng(21))
        mat = in_range_matrix(dep, 50.0)
        swapped = Deployment(heads=dep.members, members=dep.heads, region=dep.region)
        np.testing.assert_array_equal(mat, in_range_matrix(swapped, 50.0).T)

    def test_radius_validation(self):
        dep = sample_deployment(TABLE, TORUS, np.random.default_rng(0))
        with pytest.raises(ValueError):
            neighbors_within(dep, (0, 0), 0.0)
        with pytest.raises(ValueError):
            neighbors_within(dep, (0, 0), 10.0, of="towers")

    def test_member_queries(self):
        dep = sample_deployment(TABLE, TORUS, np.random.default_rng(4))
        idx = neighbors_within(dep, dep.members[0], 30.0, of="members")
        assert 0 in idx  # the query point itself


class TestEdgeEffects:
    def test_disk_boundary_undershoots_interior(self):
        # members whose D2D ball lies fully inside the disk see the full
        # intensity; the all-members average is dragged down by the boundary
        rng = np.random.default_rng(31)
        interior_counts, all_counts = [], []
        for _ in range(400):
            dep = sample_deployment(TABLE, DISK, rng)
            mat = in_range_matrix(dep, TABLE.d2d_radius)
            per_member = mat.sum(axis=1)
            inner = (
                np.linalg.norm(dep.members, axis=1)
                <= TABLE.cell_radius - TABLE.d2d_radius
            )
            interior_counts.extend(per_member[inner])
            all_counts.extend(per_member)
        interior = np.array(interior_counts, dtype=float)
        se = interior.std(ddof=1) / math.sqrt(interior.size)
        assert abs(interior.mean() - TABLE.head_intensity) < 3 * se
        assert np.mean(all_counts) < interior.mean()
