"""Complex cell-periodic potentials and their discrete Fourier transform.

A potential is stored as its values on the unit cell in canonical site order
and extended periodically. The forward DFT carries the 1/Q normalization, so
the inverse carries none; this makes the Fourier coefficients directly usable
as the entries of the multiplier-form Floquet matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigMismatchError
from .lattice import LatticeConfig, reduce_to_cell

REAL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Potential:
    """Cell-periodic complex potential, values in canonical site order."""

    cfg: LatticeConfig
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128).reshape(-1)
        if vals.shape[0] != self.cfg.cell_size:
            raise ValueError(
                f"expected {self.cfg.cell_size} values for periods {self.cfg.periods}, "
                f"got {vals.shape[0]}"
            )
        if not np.all(np.isfinite(vals.view(np.float64))):
            raise ValueError("potential values must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def is_real(self) -> bool:
        return bool(np.max(np.abs(self.values.imag)) < REAL_TOLERANCE)

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def at(self, site) -> complex:
        """Value at an arbitrary integer vector (periodic extension)."""
        return complex(self.values[self.cfg.site_index(reduce_to_cell(self.cfg, site))])

    def grid(self) -> np.ndarray:
        """Values reshaped to the cell shape (q_1, ..., q_d)."""
        return self.values.reshape(self.cfg.periods)


@dataclass(frozen=True)
class FourierCoefficients:
    """DFT coefficients indexed by cell site, periodically extended on query."""

    cfg: LatticeConfig
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128).reshape(-1)
        if arr.shape[0] != self.cfg.cell_size:
            raise ValueError("coefficient vector has wrong length")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    def at(self, freq) -> complex:
        """Coefficient at an arbitrary integer frequency vector."""
        return complex(self.coeffs[self.cfg.site_index(reduce_to_cell(self.cfg, freq))])

    @property
    def l1_norm(self) -> float:
        return float(np.sum(np.abs(self.coeffs)))


def constant(cfg: LatticeConfig, value: complex) -> Potential:
    return Potential(cfg, np.full(cfg.cell_size, value, dtype=np.complex128))


def zero(cfg: LatticeConfig) -> Potential:
    return constant(cfg, 0.0)


def dft(pot: Potential) -> FourierCoefficients:
    """Forward transform: (1/Q) * sum_n V(n) exp(-2*pi*i sum_j l_j n_j / q_j)."""
    cube = pot.values.reshape(pot.cfg.periods)
    coeffs = np.fft.fftn(cube) / pot.cfg.cell_size
    return FourierCoefficients(pot.cfg, coeffs.reshape(-1))


def idft(fc: FourierCoefficients) -> Potential:
    """Inverse transform (no prefactor): V(n) = sum_l c_l exp(+2*pi*i sum_j l_j n_j / q_j)."""
    cube = fc.coeffs.reshape(fc.cfg.periods)
    values = np.fft.ifftn(cube) * fc.cfg.cell_size
    return Potential(fc.cfg, values.reshape(-1))


def mean(pot: Potential) -> complex:
    """Arithmetic mean over the cell; equals the zero-frequency DFT coefficient."""
    return complex(np.mean(pot.values))


def separable(cfg: LatticeConfig, components) -> Potential:
    """Sum of one-dimensional potentials, V(n) = sum_j V_j(n_j).

    ``components`` holds one length-q_j vector (or 1D Potential) per axis.
    """
    if len(components) != cfg.dim:
        raise ValueError(f"need {cfg.dim} axis components, got {len(components)}")
    axes = []
    for j, comp in enumerate(components):
        vals = comp.values if isinstance(comp, Potential) else np.asarray(comp, dtype=np.complex128)
        vals = vals.reshape(-1)
        if vals.shape[0] != cfg.periods[j]:
            raise ValueError(
                f"axis {j + 1} component has length {vals.shape[0]}, expected {cfg.periods[j]}"
            )
        axes.append(vals)
    total = np.zeros(cfg.periods, dtype=np.complex128)
    for j, vals in enumerate(axes):
        shape = [1] * cfg.dim
        shape[j] = cfg.periods[j]
        total = total + vals.reshape(shape)
    return Potential(cfg, total.reshape(-1))


def translate(pot: Potential, shift) -> Potential:
    """Shifted potential W(n) = V(n + shift), with periodic wrap."""
    shift = [int(s) for s in shift]
    if len(shift) != pot.cfg.dim:
        raise ValueError("shift dimension mismatch")
    cube = pot.values.reshape(pot.cfg.periods)
    rolled = np.roll(cube, [-s for s in shift], axis=tuple(range(pot.cfg.dim)))
    return Potential(pot.cfg, rolled.reshape(-1))


def require_same_cfg(a: Potential, b: Potential) -> None:
    if a.cfg.periods != b.cfg.periods:
        raise ConfigMismatchError(f"period mismatch: {a.cfg.periods} vs {b.cfg.periods}")
