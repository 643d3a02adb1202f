"""Cell and cluster geometry: intensities, point deployment, range queries."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TORUS = "torus"
DISK = "disk"


@dataclass(frozen=True)
class NetworkParams:
    """Geometry and population of a single cell.

    Radii are in meters.  ``num_heads`` terminals cache and transmit,
    ``num_members`` terminals request files.  ``cache_capacity`` is the
    per-head cache size in files and ``energy_factor`` the per-bit energy
    ratio of a D2D link to a cellular link.
    """

    cell_radius: float = 200.0
    d2d_radius: float = 50.0
    num_heads: int = 100
    num_members: int = 250
    cache_capacity: int = 10
    energy_factor: float = 0.1

    def __post_init__(self):
        if not 0 < self.d2d_radius <= self.cell_radius:
            raise ValueError(
                f"require 0 < d2d_radius <= cell_radius, got "
                f"d2d_radius={self.d2d_radius}, cell_radius={self.cell_radius}"
            )
        if self.num_heads < 0:
            raise ValueError(f"num_heads must be >= 0, got {self.num_heads}")
        if self.num_members < 0:
            raise ValueError(f"num_members must be >= 0, got {self.num_members}")
        if self.cache_capacity < 1:
            raise ValueError(f"cache_capacity must be >= 1, got {self.cache_capacity}")
        if self.energy_factor < 0:
            raise ValueError(f"energy_factor must be >= 0, got {self.energy_factor}")

    @property
    def head_intensity(self) -> float:
        """Mean number of heads within one D2D radius of a typical point."""
        return self.num_heads * (self.d2d_radius / self.cell_radius) ** 2

    @property
    def member_intensity(self) -> float:
        """Mean number of members within one D2D radius of a typical point."""
        return self.num_members * (self.d2d_radius / self.cell_radius) ** 2


@dataclass(frozen=True)
class Region:
    """Sampling region of total area pi * cell_radius**2.

    ``torus``: a square of side sqrt(pi) * cell_radius with wraparound
    distance, so the uniform point field is free of boundary effects.
    ``disk``: the disk of radius cell_radius with plain Euclidean distance
    (exhibits edge effects near the boundary).
    """

    mode: str
    cell_radius: float

    def __post_init__(self):
        if self.mode not in (TORUS, DISK):
            raise ValueError(f"region mode must be '{TORUS}' or '{DISK}', got {self.mode!r}")
        if self.cell_radius <= 0:
            raise ValueError(f"cell_radius must be > 0, got {self.cell_radius}")

    @property
    def side(self) -> float:
        return math.sqrt(math.pi) * self.cell_radius

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw ``n`` uniform points, shape (n, 2).

        Both modes draw an (n, 2) uniform block so that the first k rows of
        an n-point sample coincide with a k-point sample from the same
        generator state (common-random-number coupling across counts).
        """
        u = rng.random((n, 2))
        if self.mode == TORUS:
            return u * self.side
        r = self.cell_radius * np.sqrt(u[:, 0])
        theta = 2.0 * math.pi * u[:, 1]
        return np.column_stack([r * np.cos(theta), r * np.sin(theta)])

    def sq_distances(self, points: np.ndarray, ref) -> np.ndarray:
        """Squared distances from each row of ``points`` to ``ref``."""
        d = np.abs(np.asarray(points, dtype=np.float64) - np.asarray(ref, dtype=np.float64))
        if self.mode == TORUS:
            d = np.minimum(d, self.side - d)
        return np.einsum("ij,ij->i", d, d) if d.ndim == 2 else float(np.dot(d, d))

    def pairwise_sq_distances(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Squared distance matrix of shape (len(a), len(b))."""
        d = np.abs(a[:, None, :] - b[None, :, :])
        if self.mode == TORUS:
            d = np.minimum(d, self.side - d)
        return np.einsum("ijk,ijk->ij", d, d)


@dataclass(frozen=True)
class Deployment:
    """One realization of head and member positions in a region."""

    heads: np.ndarray    # (num_heads, 2)
    members: np.ndarray  # (num_members, 2)
    region: Region

    def __post_init__(self):
        self.heads.setflags(write=False)
        self.members.setflags(write=False)


def sample_deployment(
    params: NetworkParams,
    region_mode: str,
    rng: np.random.Generator,
    member_rng: np.random.Generator | None = None,
) -> Deployment:
    """Place ``num_heads`` heads and ``num_members`` members independently
    and uniformly in the region (heads first, then members).

    The point counts are fixed at the configured values; conditioned on the
    counts this is the uniform (binomial) point field whose in-range counts
    the Poisson intensities describe.  Passing a separate ``member_rng``
    decouples member positions from the head stream.
    """
    region = Region(region_mode, params.cell_radius)
    heads = region.sample(rng, params.num_heads)
    members = region.sample(member_rng if member_rng is not None else rng, params.num_members)
    return Deployment(heads=heads, members=members, region=region)


def neighbors_within(deployment: Deployment, point, radius: float, of: str = "heads") -> np.ndarray:
    """Indices of heads (or members) at distance <= radius from ``point``.

    Uses the deployment region's metric (wraparound on the torus).  A plain
    vectorized scan; fast up to at least 1e4 points.
    """
    if radius <= 0:
        raise ValueError(f"radius must be > 0, got {radius}")
    if of not in ("heads", "members"):
        raise ValueError(f"of must be 'heads' or 'members', got {of!r}")
    pts = deployment.heads if of == "heads" else deployment.members
    if len(pts) == 0:
        return np.empty(0, dtype=np.intp)
    sq = deployment.region.sq_distances(pts, point)
    return np.flatnonzero(sq <= radius * radius)


def in_range_matrix(deployment: Deployment, radius: float) -> np.ndarray:
    """Boolean (num_members, num_heads) matrix of member-head adjacency."""
    if len(deployment.members) == 0 or len(deployment.heads) == 0:
        return np.zeros((len(deployment.members), len(deployment.heads)), dtype=bool)
    sq = deployment.region.pairwise_sq_distances(deployment.members, deployment.heads)
    return sq <= radius * radius
