"""Uniform box grids over the group, its dual, and the phase space.

Midpoint (cell-centred) nodes on [-L_i, L_i] per axis: x_k = -L_i + (k+1/2) h_i
with h_i = 2 L_i / N_i.  A grid over the dual carries the spectral measure
(2 pi)^{-n} d(xi), so its quadrature ``weight`` already includes that factor;
this is the single place the Fourier normalization convention lives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class GridError(ValueError):
    pass


def _as_tuple(value, n, kind) -> tuple:
    if np.isscalar(value):
        value = [value] * n
    out = tuple(kind(v) for v in value)
    if len(out) != n:
        raise GridError(f"expected {n} per-axis values, got {len(out)}")
    return out


@dataclass(frozen=True)
class Grid:
    """Uniform midpoint grid over a box in R^n.

    ``dual=True`` marks a grid over the dual g#; its integration weight is
    the cell volume times (2 pi)^{-n}.
    """

    half_width: tuple[float, ...]
    counts: tuple[int, ...]
    dual: bool = False

    def __post_init__(self):
        n = len(self.half_width)
        object.__setattr__(self, "half_width", _as_tuple(self.half_width, n, float))
        object.__setattr__(self, "counts", _as_tuple(self.counts, n, int))
        if any(L <= 0 for L in self.half_width) or any(N <= 0 for N in self.counts):
            raise GridError("half widths and counts must be positive")

    @classmethod
    def box(cls, n: int, half_width, count, dual: bool = False) -> "Grid":
        return cls(_as_tuple(half_width, n, float), _as_tuple(count, n, int), dual)

    @property
    def n(self) -> int:
        return len(self.half_width)

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple(2.0 * L / N for L, N in zip(self.half_width, self.counts))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def weight(self) -> float:
        """Quadrature weight per node, including the dual-side (2 pi)^{-n}."""
        w = self.cell_volume
        if self.dual:
            w /= (2.0 * math.pi) ** self.n
        return w

    @property
    def size(self) -> int:
        return int(np.prod(self.counts))

    def axes(self) -> list[np.ndarray]:
        return [-L + (np.arange(N) + 0.5) * h
                for L, N, h in zip(self.half_width, self.counts, self.spacing)]

    @cached_property
    def _nodes(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=-1)
        pts.setflags(write=False)
        return pts

    def nodes(self) -> np.ndarray:
        """(size, n) array of node coordinates, C order over axes."""
        return self._nodes

    def as_dual(self) -> "Grid":
        return Grid(self.half_width, self.counts, dual=True)

    def refine(self, factor: int = 2) -> "Grid":
        return Grid(self.half_width, tuple(N * factor for N in self.counts), self.dual)


@dataclass(frozen=True)
class XiGrid:
    """Product grid over the phase space Xi = G x g#."""

    g_grid: Grid
    dual_grid: Grid

    def __post_init__(self):
        if self.g_grid.n != self.dual_grid.n:
            raise GridError("group and dual grids must have matching dimension")
        if self.g_grid.dual or not self.dual_grid.dual:
            raise GridError("XiGrid needs a plain group grid and a dual-flagged dual grid")

    @classmethod
    def box(cls, n: int, half_width, count, dual_half_width=None, dual_count=None) -> "XiGrid":
        g = Grid.box(n, half_width, count)
        d = Grid.box(n, dual_half_width if dual_half_width is not None else half_width,
                     dual_count if dual_count is not None else count, dual=True)
        return cls(g, d)

    @property
    def n(self) -> int:
        return self.g_grid.n

    @property
    def weight(self) -> float:
        return self.g_grid.weight * self.dual_grid.weight

    @property
    def size(self) -> int:
        return self.g_grid.size * self.dual_grid.size

    def node_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """(z nodes, zeta nodes); phase-space samples are indexed [i_z, i_zeta]."""
        return self.g_grid.nodes(), self.dual_grid.nodes()

    def refine(self, factor: int = 2) -> "XiGrid":
        return XiGrid(self.g_grid.refine(factor), self.dual_grid.refine(factor))
