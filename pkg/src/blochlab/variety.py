"""Decision procedures on the Bloch variety.

`entire_graph_test` decides whether det(D_V(k) - lam*I) factors into the
fully split product with some cell offset l and constant K — equivalently,
whether the variety contains the graph of an entire function. The test is
polynomial identity testing: both sides are Laurent polynomials of bounded
degree, so agreement at more random points than the degree bound is
conclusive up to floating-point tolerance.

`floquet_isospectral` compares two characteristic polynomials the same way.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .floquet import (
    assemble_direct_batch,
    entire_graph_value,
    product_form_eval_batch,
)
from .lattice import LatticeConfig, SiteIndex
from .potential import Potential, mean, require_same_cfg

IDENTITY_TOLERANCE = 1e-8
N_TEST_POINTS = 64


@dataclass(frozen=True)
class EntireGraphCertificate:
    """Verdict of the factorization test, with enough data to audit it.

    When holds: (l, K) is the witness pair and residual the worst relative
    mismatch over the test points. When not: best_l is the closest failing
    offset and refutation the worst point for it, as a dict with keys
    k, lam, lhs, rhs.
    """

    holds: bool
    cfg: LatticeConfig
    K: complex
    residual: float
    l: tuple[int, ...] | None = None
    best_l: tuple[int, ...] | None = None
    refutation: dict | None = None

    def to_record(self) -> dict:
        return {
            "holds": self.holds,
            "l": list(self.l) if self.l is not None else None,
            "K": [float(self.K.real), float(self.K.imag)],
            "residual": float(self.residual),
        }


def _sample_points(
    cfg: LatticeConfig, n_points: int, radius: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Quasimomenta from the complex box [-1,1]^2 per axis, spectral values
    uniform on the disc of the given radius."""
    ks = rng.uniform(-1.0, 1.0, size=(n_points, cfg.dim)) + 1j * rng.uniform(
        -1.0, 1.0, size=(n_points, cfg.dim)
    )
    lams = (
        radius
        * np.sqrt(rng.uniform(0.0, 1.0, size=n_points))
        * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size=n_points))
    )
    return ks, lams


def _lambda_radius(cfg: LatticeConfig, *pots: Potential) -> float:
    return 2.0 * cfg.dim + 2.0 * max(p.sup_norm for p in pots) + 1.0


def _charpoly_batch(pot: Potential, ks: np.ndarray, lams: np.ndarray) -> np.ndarray:
    mats = assemble_direct_batch(pot, ks)
    return np.array(
        [kernels.det_shifted(mats[i], lams[i]) for i in range(ks.shape[0])],
        dtype=np.complex128,
    )


def _relative_mismatch(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    return np.abs(lhs - rhs) / scale


def factorization_residual(
    pot: Potential,
    l: SiteIndex,
    K: complex,
    n_points: int = N_TEST_POINTS,
    seed: int = 0,
) -> tuple[float, dict]:
    """Worst relative mismatch between det(D_V(k) - lam*I) and the split
    product at offset l, constant K, over random test points; also returns
    the worst witness point."""
    cfg = pot.cfg
    rng = np.random.default_rng(seed)
    ks, lams = _sample_points(cfg, n_points, _lambda_radius(cfg, pot), rng)
    lhs = _charpoly_batch(pot, ks, lams)
    rhs = product_form_eval_batch(cfg, l, K, ks, lams)
    mism = _relative_mismatch(lhs, rhs)
    worst = int(np.argmax(mism))
    witness = {
        "k": ks[worst].tolist(),
        "lam": complex(lams[worst]),
        "lhs": complex(lhs[worst]),
        "rhs": complex(rhs[worst]),
    }
    return float(mism[worst]), witness


def entire_graph_test(
    pot: Potential,
    n_points: int = N_TEST_POINTS,
    tolerance: float = IDENTITY_TOLERANCE,
    seed: int = 0,
) -> EntireGraphCertificate:
    """Decide the split-product factorization of the characteristic
    polynomial.

    K is forced to the potential's mean (subtracting the mean reduces to
    the zero-mean case, where the constant must vanish); the offset l is
    searched exhaustively over the cell. Returns the first l whose relative
    mismatches all stay under the tolerance, else the closest failing l
    with its worst witness point.
    """
    cfg = pot.cfg
    K = complex(mean(pot))
    rng = np.random.default_rng(seed)
    ks, lams = _sample_points(cfg, n_points, _lambda_radius(cfg, pot), rng)
    lhs = _charpoly_batch(pot, ks, lams)
    best_l: tuple[int, ...] | None = None
    best_residual = np.inf
    best_witness: dict | None = None
    for l in cfg.sites:
        rhs = product_form_eval_batch(cfg, l, K, ks, lams)
        mism = _relative_mismatch(lhs, rhs)
        worst = int(np.argmax(mism))
        residual = float(mism[worst])
        if residual < tolerance:
            return EntireGraphCertificate(
                holds=True, cfg=cfg, K=K, residual=residual, l=l
            )
        if residual < best_residual:
            best_residual = residual
            best_l = l
            best_witness = {
                "k": ks[worst].tolist(),
                "lam": complex(lams[worst]),
                "lhs": complex(lhs[worst]),
                "rhs": complex(rhs[worst]),
            }
    return EntireGraphCertificate(
        holds=False,
        cfg=cfg,
        K=K,
        residual=best_residual,
        best_l=best_l,
        refutation=best_witness,
    )


def entire_graph_function(cert: EntireGraphCertificate, k) -> complex:
    """Evaluate the certified entire function at a (complex) quasimomentum:
    the zero-site factor K + sum_j (exp(2*pi*i*k_j/q_j)
    + exp(-2*pi*i*(l_j+k_j)/q_j)). Its graph lies on the variety."""
    if not cert.holds:
        raise ValueError("certificate does not hold; there is no graph to evaluate")
    return entire_graph_value(cert.cfg, cert.l, cert.K, k)


def floquet_isospectral(
    pot: Potential,
    other: Potential,
    n_points: int = N_TEST_POINTS,
    tolerance: float = IDENTITY_TOLERANCE,
    seed: int = 0,
) -> tuple[bool, float]:
    """Whether two potentials on the same cell have identical characteristic
    polynomials (hence identical Floquet spectra for every quasimomentum).
    Returns the verdict and the worst relative mismatch."""
    require_same_cfg(pot, other)
    cfg = pot.cfg
    rng = np.random.default_rng(seed)
    radius = _lambda_radius(cfg, pot, other)
    ks, lams = _sample_points(cfg, n_points, radius, rng)
    lhs = _charpoly_batch(pot, ks, lams)
    rhs = _charpoly_batch(other, ks, lams)
    residual = float(np.max(_relative_mismatch(lhs, rhs)))
    return residual < tolerance, residual
