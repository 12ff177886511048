"""Periodic lattice geometry: periods, fundamental domain, roots of unity.

Everything downstream (potentials, Floquet matrices, band structure) indexes
the unit cell through the canonical site order defined here: lexicographic in
the coordinates, first axis outermost.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

SiteIndex = tuple[int, ...]


@dataclass(frozen=True)
class LatticeConfig:
    """Diagonal period lattice q_1 Z + ... + q_d Z.

    ``periods`` are the per-axis periods (q_1, ..., q_d); the unit cell has
    ``cell_size`` = prod(q_j) sites. Degenerate axes (q_j = 1) are allowed.
    """

    periods: tuple[int, ...]

    def __post_init__(self):
        periods = tuple(int(q) for q in self.periods)
        if len(periods) < 1:
            raise ValueError("need at least one period")
        if any(q < 1 for q in periods):
            raise ValueError(f"periods must be positive, got {periods}")
        object.__setattr__(self, "periods", periods)

    @property
    def dim(self) -> int:
        return len(self.periods)

    @property
    def cell_size(self) -> int:
        out = 1
        for q in self.periods:
            out *= q
        return out

    @cached_property
    def sites(self) -> tuple[SiteIndex, ...]:
        """All cell sites in canonical (lexicographic) order."""
        return tuple(product(*(range(q) for q in self.periods)))

    @cached_property
    def site_array(self) -> np.ndarray:
        """(cell_size, dim) integer array of the sites, canonical order."""
        arr = np.array(self.sites, dtype=np.int64)
        return arr.reshape(self.cell_size, self.dim)

    def site_index(self, site) -> int:
        """Row index of ``site`` in the canonical order (mixed-radix)."""
        idx = 0
        for coord, q in zip(site, self.periods):
            if not 0 <= coord < q:
                raise ValueError(f"site {tuple(site)} outside cell for periods {self.periods}")
            idx = idx * q + int(coord)
        return idx


def fundamental_domain(cfg: LatticeConfig) -> list[SiteIndex]:
    """Enumerate the unit cell: all n with 0 <= n_j < q_j, lexicographic order.

    The position in this list is the canonical matrix row/column index used
    by every dense operator in the package.
    """
    return list(cfg.sites)


def root_of_unity(cfg: LatticeConfig, axis: int, m: int) -> complex:
    """exp(2*pi*i*m/q_axis) for 1-based ``axis``; periodic in m with period q_axis."""
    if not 1 <= axis <= cfg.dim:
        raise ValueError(f"axis {axis} out of range for dimension {cfg.dim}")
    q = cfg.periods[axis - 1]
    return complex(np.exp(2j * np.pi * (m % q) / q))


def reduce_to_cell(cfg: LatticeConfig, v) -> SiteIndex:
    """Componentwise v_j mod q_j, mapping any integer vector into the cell."""
    return tuple(int(x) % q for x, q in zip(v, cfg.periods))


def min_root_gap(cfg: LatticeConfig) -> float:
    """min over axes j and m in 1..q_j-1 of |1 - exp(2*pi*i*m/q_j)|.

    Axes with q_j = 1 contribute nothing; if every axis is degenerate the
    gap is vacuous and 1.0 is returned.
    """
    gaps = [
        abs(1.0 - np.exp(2j * np.pi * m / q))
        for q in cfg.periods
        if q > 1
        for m in range(1, q)
    ]
    return float(min(gaps)) if gaps else 1.0
