"""Floquet matrices of the discrete operator Delta + V on a periodic cell.

Two independent assembly routes are kept deliberately separate so they can
cross-check each other: the direct route wires nearest-neighbor hops on the
fundamental domain with boundary multipliers, the Fourier route builds the
equivalent diagonal-plus-convolution form from the potential's discrete
Fourier coefficients. Factored characteristic polynomials for the
entire-graph criterion live here too, next to the matrices they describe.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .lattice import LatticeConfig, SiteIndex, root_of_unity
from .potential import Potential, dft

TWO_PI_I = 2j * np.pi


@dataclass(frozen=True)
class FloquetMatrix:
    """A Q x Q Floquet matrix together with the point it was assembled at.

    kind is "direct" (quasimomentum k, hop assembly) or "fourier"
    (multiplier z, diagonal-plus-convolution assembly).
    """

    cfg: LatticeConfig
    entries: np.ndarray
    kind: str
    point: tuple[complex, ...]

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=np.complex128)
        q = self.cfg.cell_size
        if arr.shape != (q, q):
            raise ValueError(f"entries must be {q}x{q}, got {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "point", tuple(complex(p) for p in self.point))

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def hermitian_defect(self) -> float:
        """Largest entrywise deviation from self-adjointness."""
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def charpoly_at(self, lam: complex) -> complex:
        """det(M - lam*I)."""
        return kernels.det_shifted(self.entries, lam)


@lru_cache(maxsize=None)
def hop_table(cfg: LatticeConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Nearest-neighbor hops on the cell as parallel index arrays.

    Returns (rows, cols, axes, wraps); a hop contributes
    exp(2*pi*i*wrap*k[axis]) to entry (row, col). wrap is 0 for interior
    hops, +1 / -1 when the step leaves the cell in the +/- direction.
    """
    rows, cols, axes, wraps = [], [], [], []
    sites = cfg.sites
    index = cfg.site_index
    for n in sites:
        r = index(n)
        for j, qj in enumerate(cfg.periods):
            up = list(n)
            up[j] += 1
            wrap_up = 0
            if up[j] == qj:
                up[j] = 0
                wrap_up = 1
            rows.append(r)
            cols.append(index(tuple(up)))
            axes.append(j)
            wraps.append(wrap_up)
            down = list(n)
            down[j] -= 1
            wrap_down = 0
            if down[j] < 0:
                down[j] = qj - 1
                wrap_down = -1
            rows.append(r)
            cols.append(index(tuple(down)))
            axes.append(j)
            wraps.append(wrap_down)
    return (
        np.asarray(rows, dtype=np.intp),
        np.asarray(cols, dtype=np.intp),
        np.asarray(axes, dtype=np.intp),
        np.asarray(wraps, dtype=np.float64),
    )


def _as_point(cfg: LatticeConfig, k) -> np.ndarray:
    arr = np.asarray(k, dtype=np.complex128).reshape(-1)
    if arr.shape[0] != cfg.dim:
        raise ValueError(f"quasimomentum must have {cfg.dim} components, got {arr.shape[0]}")
    return arr


def assemble_direct(pot: Potential, k) -> FloquetMatrix:
    """Floquet matrix at quasimomentum k via nearest-neighbor hop assembly.

    Row n collects u(n +/- e_j) for every axis; a step across the cell
    boundary picks up the multiplier exp(+/- 2*pi*i*k_j). The potential
    sits on the diagonal.
    """
    kv = _as_point(pot.cfg, k)
    batch = assemble_direct_batch(pot, kv[None, :])
    return FloquetMatrix(pot.cfg, batch[0], "direct", tuple(kv))


def assemble_direct_batch(pot: Potential, ks) -> np.ndarray:
    """Stack of Floquet matrices, shape (m, Q, Q), for m quasimomenta."""
    cfg = pot.cfg
    karr = np.asarray(ks, dtype=np.complex128)
    if karr.ndim != 2 or karr.shape[1] != cfg.dim:
        raise ValueError(f"expected shape (m, {cfg.dim}) quasimomenta, got {karr.shape}")
    m = karr.shape[0]
    q = cfg.cell_size
    rows, cols, axes, wraps = hop_table(cfg)
    out = np.zeros((m, q, q), dtype=np.complex128)
    # exp(2 pi i * wrap * k_axis) for every (sample, hop) pair
    phases = np.exp(TWO_PI_I * wraps[None, :] * karr[:, axes])
    # scatter-add per hop; distinct hops may share an entry (short periods)
    for h in range(rows.shape[0]):
        out[:, rows[h], cols[h]] += phases[:, h]
    out[:, np.arange(q), np.arange(q)] += pot.values[None, :]
    return out


def multiplier_to_quasimomentum(cfg: LatticeConfig, z) -> np.ndarray:
    """A quasimomentum k with exp(2*pi*i*k_j) = z_j**q_j (principal branch)."""
    zv = _as_point(cfg, z)
    if np.any(zv == 0):
        raise ValueError("multipliers must be nonzero")
    qv = np.asarray(cfg.periods, dtype=np.float64)
    return qv * np.log(zv) / TWO_PI_I


def assemble_fourier(pot: Potential, z) -> FloquetMatrix:
    """Floquet matrix in the Fourier frame at multiplier z.

    Diagonal part: sum_j (r_j(n_j) z_j + r_j(-n_j) / z_j) with
    r_j(m) = exp(2*pi*i*m/q_j). Off-diagonal part: the convolution matrix
    of the potential's Fourier coefficients, entry (n, n') = Vhat(n - n').
    Unitarily equivalent to the direct matrix at any k with
    exp(2*pi*i*k_j) = z_j**q_j.
    """
    cfg = pot.cfg
    zv = _as_point(cfg, z)
    if np.any(zv == 0):
        raise ValueError("multipliers must be nonzero")
    sites = cfg.site_array  # (Q, d)
    qv = np.asarray(cfg.periods, dtype=np.float64)
    rho = np.exp(TWO_PI_I * sites / qv[None, :])  # r_j(n_j)
    diag = rho @ zv + (1.0 / rho) @ (1.0 / zv)
    fc = dft(pot)
    cube = np.asarray(fc.coeffs, dtype=np.complex128).reshape(cfg.periods)
    diff = (sites[:, None, :] - sites[None, :, :]) % np.asarray(cfg.periods)
    conv = cube[tuple(diff[..., j] for j in range(cfg.dim))]
    entries = conv + np.diag(diag)
    return FloquetMatrix(cfg, entries, "fourier", tuple(zv))


def substituted_charpoly_eval(pot: Potential, z, lam: complex) -> complex:
    """Characteristic polynomial in the multiplier frame: det at the Fourier
    form A + B_V evaluated at z. Agrees with the direct form at any k with
    exp(2*pi*i*k_j) = z_j**q_j, and is invariant under z_j -> r_j(m) z_j."""
    return assemble_fourier(pot, z).charpoly_at(lam)


def entire_graph_value(cfg: LatticeConfig, l: SiteIndex, K: complex, k) -> complex:
    """Value of the candidate entire function whose graph may lie in the
    Bloch variety: K + sum_j (exp(2*pi*i*k_j/q_j) + exp(-2*pi*i*(l_j+k_j)/q_j))."""
    kv = _as_point(cfg, k)
    qv = np.asarray(cfg.periods, dtype=np.float64)
    lv = np.asarray(l, dtype=np.float64)
    return complex(
        K
        + np.sum(np.exp(TWO_PI_I * kv / qv))
        + np.sum(np.exp(-TWO_PI_I * (lv + kv) / qv))
    )


def product_form_eval(cfg: LatticeConfig, l: SiteIndex, K: complex, k, lam: complex) -> complex:
    """Fully factored candidate for det(D - lam*I): the product over cell
    sites n of (K - lam + sum_j (exp(2*pi*i*(n_j+k_j)/q_j)
    + exp(-2*pi*i*(n_j+l_j+k_j)/q_j)))."""
    return complex(
        product_form_eval_batch(
            cfg, l, K, np.asarray(k, dtype=np.complex128)[None, :], np.asarray([lam])
        )[0]
    )


def product_form_eval_batch(cfg: LatticeConfig, l: SiteIndex, K: complex, ks, lams) -> np.ndarray:
    """Vectorized product form over paired samples (ks[i], lams[i])."""
    karr = np.asarray(ks, dtype=np.complex128)
    lamarr = np.asarray(lams, dtype=np.complex128).reshape(-1)
    if karr.ndim != 2 or karr.shape[1] != cfg.dim:
        raise ValueError(f"expected shape (m, {cfg.dim}) quasimomenta, got {karr.shape}")
    if lamarr.shape[0] != karr.shape[0]:
        raise ValueError("need one spectral value per quasimomentum")
    lv = np.asarray(l, dtype=np.float64)
    if lv.shape[0] != cfg.dim:
        raise ValueError(f"offset l must have {cfg.dim} components")
    sites = cfg.site_array  # (Q, d)
    qv = np.asarray(cfg.periods, dtype=np.float64)
    # factors[i, n] built from (n_j + k_j) and (n_j + l_j + k_j) per axis
    up = np.exp(TWO_PI_I * (sites[None, :, :] + karr[:, None, :]) / qv)
    down = np.exp(-TWO_PI_I * (sites[None, :, :] + lv[None, None, :] + karr[:, None, :]) / qv)
    factors = K - lamarr[:, None] + np.sum(up + down, axis=2)
    return np.prod(factors, axis=1)


def constant_factor_eigenvalues(cfg: LatticeConfig, c: complex, k) -> np.ndarray:
    """Eigenvalues of the constant-potential Floquet matrix in closed form:
    c + sum_j 2 cos(2*pi*(n_j + k_j)/q_j) over cell sites n (sorted by
    real part, then imaginary)."""
    kv = _as_point(cfg, k)
    qv = np.asarray(cfg.periods, dtype=np.float64)
    sites = cfg.site_array
    phases = TWO_PI_I * (sites + kv[None, :]) / qv
    vals = c + np.sum(np.exp(phases) + np.exp(-phases), axis=1)
    order = np.lexsort((vals.imag, vals.real))
    return vals[order]
