"""Zipf request model over a ranked file library."""

from __future__ import annotations

import numpy as np


class ZipfCatalog:
    """Ranked library of ``size`` files with Zipf(``exponent``) popularity.

    The request probability of the file at rank ``i`` (1-based) is
    ``(1 / i**exponent) / norm`` with ``norm = sum_{j=1..size} j**-exponent``.
    Probabilities and their running totals are precomputed once; terms are
    generated in rank order 1..size (descending magnitude) and accumulated
    with numpy's pairwise summation, so ``norm`` is deterministic for a
    given (size, exponent).

    ``exponent = 0`` gives the uniform library.  Instances are immutable
    after construction and safe to share across workers; sampling takes an
    explicit per-worker generator.
    """

    def __init__(self, size: int, exponent: float):
        if size < 1:
            raise ValueError(f"library size must be >= 1, got {size}")
        if exponent < 0:
            raise ValueError(f"Zipf exponent must be >= 0, got {exponent}")
        self.size = int(size)
        self.exponent = float(exponent)
        ranks = np.arange(1, self.size + 1, dtype=np.float64)
        weights = ranks ** (-self.exponent)
        self.norm = float(weights.sum())
        self._pmf = weights / self.norm
        self._cum = np.cumsum(self._pmf)
        self._pmf.setflags(write=False)
        self._cum.setflags(write=False)

    def __repr__(self) -> str:
        return f"ZipfCatalog(size={self.size}, exponent={self.exponent})"

    @property
    def probabilities(self) -> np.ndarray:
        """Read-only pmf array indexed by rank - 1."""
        return self._pmf

    def pmf(self, rank):
        """Request probability of the file(s) at ``rank`` (1-based int or array)."""
        r = np.asarray(rank)
        if np.any(r < 1) or np.any(r > self.size):
            raise ValueError(f"rank must lie in [1, {self.size}]")
        out = self._pmf[r - 1]
        return float(out) if out.ndim == 0 else out

    def top_mass(self, count):
        """Total request probability of the ``count`` highest-ranked files.

        Accepts an int or an integer array; ``top_mass(size)`` is 1 up to
        accumulated rounding (within 1e-12).
        """
        c = np.asarray(count)
        if np.any(c < 0) or np.any(c > self.size):
            raise ValueError(f"count must lie in [0, {self.size}]")
        out = np.where(c > 0, self._cum[np.maximum(c, 1) - 1], 0.0)
        return float(out) if out.ndim == 0 else out

    def sample(self, rng: np.random.Generator, size=None):
        """Draw file ranks (1-based) i.i.d. from the popularity law.

        Inversion of the precomputed cumulative table via binary search;
        deterministic for a fixed generator state.
        """
        u = rng.random(size)
        idx = np.searchsorted(self._cum, u, side="right")
        idx = np.minimum(idx, self.size - 1)
        if size is None:
            return int(idx) + 1
        return idx + 1
