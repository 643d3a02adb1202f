"""Cache-placement strategies and per-head cache contents."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .popularity import ZipfCatalog
from .spatial import NetworkParams

MPC = "mpc"
EPRC = "eprc"
TOP = "top"


@dataclass(frozen=True)
class CacheStrategy:
    """Placement rule for head caches.

    ``mpc``   every head stores the ``cache_capacity`` most popular files.
    ``eprc``  uniform random capacity-subsets of the whole library.
    ``top``   uniform random capacity-subsets of the ``pool_size`` most
              popular files.  ``pool_size == capacity`` reduces to mpc,
              ``pool_size == library size`` is distributed identically to
              eprc (eprc is implemented as exactly that substitution).
    """

    kind: str
    pool_size: int | None = None

    def __post_init__(self):
        if self.kind not in (MPC, EPRC, TOP):
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.kind == TOP and self.pool_size is None:
            raise ValueError("top strategy requires a pool_size")

    @classmethod
    def mpc(cls) -> "CacheStrategy":
        return cls(MPC)

    @classmethod
    def eprc(cls) -> "CacheStrategy":
        return cls(EPRC)

    @classmethod
    def top(cls, pool_size: int) -> "CacheStrategy":
        return cls(TOP, pool_size)

    def resolved_pool(self, params: NetworkParams, catalog: ZipfCatalog) -> int:
        """Candidate-pool size the strategy draws caches from."""
        if self.kind == MPC:
            return params.cache_capacity
        if self.kind == EPRC:
            return catalog.size
        return int(self.pool_size)

    def label(self) -> str:
        if self.kind == TOP:
            return f"top{self.pool_size}"
        return self.kind


@dataclass(frozen=True)
class CacheAssignment:
    """Per-head cache contents: one row of ``cache_capacity`` distinct ranks.

    Rows are sorted ascending, so deterministic strategies have a canonical
    representation.  Immutable after creation.
    """

    ranks: np.ndarray  # (num_heads, cache_capacity), 1-based file ranks
    library_size: int

    def __post_init__(self):
        self.ranks.setflags(write=False)

    @property
    def num_heads(self) -> int:
        return self.ranks.shape[0]

    @property
    def capacity(self) -> int:
        return self.ranks.shape[1]

    def contains(self, head: int, rank: int) -> bool:
        """Membership test of ``rank`` in the given head's cache."""
        if not 0 <= head < self.num_heads:
            raise ValueError(f"head index must lie in [0, {self.num_heads})")
        if not 1 <= rank <= self.library_size:
            raise ValueError(f"rank must lie in [1, {self.library_size}]")
        row = self.ranks[head]
        i = np.searchsorted(row, rank)
        return bool(i < row.size and row[i] == rank)

    def mask(self) -> np.ndarray:
        """Boolean (num_heads, library_size) cache-membership matrix."""
        m = np.zeros((self.num_heads, self.library_size), dtype=bool)
        if self.num_heads:
            m[np.arange(self.num_heads)[:, None], self.ranks - 1] = True
        return m


def assign_caches(
    strategy: CacheStrategy,
    params: NetworkParams,
    catalog: ZipfCatalog,
    rng: np.random.Generator,
) -> CacheAssignment:
    """Fill every head's cache according to ``strategy``.

    Caches are hard capacity-``cache_capacity`` sets: random strategies draw
    uniform capacity-subsets without replacement from the candidate pool, so
    the per-file marginal cache probability is capacity / pool for every
    pooled rank while the capacity constraint holds exactly.  Heads draw
    independently of each other (repeated contents across heads allowed).
    """
    cap = params.cache_capacity
    pool = strategy.resolved_pool(params, catalog)
    if pool > catalog.size:
        raise ValueError(
            f"candidate pool ({pool}) must not exceed the library size ({catalog.size})"
        )
    if cap > pool:
        raise ValueError(
            f"cache_capacity ({cap}) must not exceed the candidate pool ({pool})"
        )
    n = params.num_heads
    if strategy.kind == MPC or cap == pool:
        # pool == capacity leaves a single possible cache: the top files
        ranks = np.tile(np.arange(1, cap + 1, dtype=np.int64), (n, 1))
    else:
        # Uniform capacity-subset per head: rank rows of iid uniforms and
        # keep the capacity smallest positions.
        u = rng.random((n, pool))
        idx = np.argpartition(u, cap - 1, axis=1)[:, :cap]
        ranks = np.sort(idx + 1, axis=1).astype(np.int64)
    return CacheAssignment(ranks=ranks, library_size=catalog.size)


def head_caches_file(assignment: CacheAssignment, head: int, rank: int) -> bool:
    """True when the given head's cache holds the file at ``rank``."""
    return assignment.contains(head, rank)
