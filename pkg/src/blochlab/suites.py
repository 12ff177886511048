"""Named invariant suites behind the command-line ``verify`` subcommand.

Each suite bundles seeded randomized checks of one structural property and
returns per-check results with residuals, so a regression shows up as a
failing named line instead of silent drift. Suite keys are part of the
command-line interface and stay stable; the functions carry descriptive
names.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bands import borg_check_1d
from .eigensolve import OmegaDomain, asymptotics_check, gershgorin_check
from .floquet import assemble_direct, assemble_fourier, multiplier_to_quasimomentum
from .inverse import enumerate_Xe
from .lattice import LatticeConfig
from .potential import Potential, constant


@dataclass(frozen=True)
class CheckResult:
    """One named pass/fail line with the residual that decided it."""

    name: str
    passed: bool
    residual: float
    detail: str = ""


def _random_complex_potential(cfg: LatticeConfig, rng: np.random.Generator) -> Potential:
    vals = rng.normal(size=cfg.cell_size) + 1j * rng.normal(size=cfg.cell_size)
    return Potential(cfg, vals)


def _random_real_nonconstant(
    cfg: LatticeConfig, rng: np.random.Generator, min_mag: float = 0.0
) -> Potential:
    # rejection keeps draws honest; a constant draw has probability zero
    while True:
        vals = rng.normal(size=cfg.cell_size)
        if min_mag > 0.0:
            vals = np.sign(vals) * (np.abs(vals) + min_mag)
        if np.max(np.abs(vals - vals.mean())) > 1e-9:
            return Potential(cfg, vals)


def conjugation_identity_suite(seed: int = 0) -> list[CheckResult]:
    """Characteristic polynomial agrees between the direct frame at k and
    the Fourier frame at any multiplier z mapping to k."""
    rng = np.random.default_rng(seed)
    results = []
    for periods in ((2,), (3,), (2, 2)):
        cfg = LatticeConfig(periods)
        worst = 0.0
        for _ in range(70):
            pot = _random_complex_potential(cfg, rng)
            z = rng.uniform(0.5, 2.0, cfg.dim) * np.exp(
                2j * np.pi * rng.uniform(size=cfg.dim)
            )
            lam = 6.0 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            lhs = assemble_fourier(pot, z).charpoly_at(lam)
            k = multiplier_to_quasimomentum(cfg, z)
            rhs = assemble_direct(pot, k).charpoly_at(lam)
            rel = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
            worst = max(worst, rel)
        results.append(
            CheckResult(
                name=f"identity q={periods}",
                passed=worst < 1e-9,
                residual=worst,
                detail="70 random (V, z, lambda) draws",
            )
        )
    return results


def disc_localization_suite(seed: int = 0) -> list[CheckResult]:
    """In the asymptotic multiplier region the row discs are pairwise
    disjoint and each holds exactly one eigenvalue."""
    rng = np.random.default_rng(seed)
    results = []
    for periods in ((2,), (3,), (2, 2)):
        cfg = LatticeConfig(periods)
        all_ok = True
        worst_ratio = 0.0
        for _ in range(17):
            pot = _random_complex_potential(cfg, rng)
            omega = OmegaDomain.for_potential(pot)
            for z in omega.sample(rng, 10):
                rep = gershgorin_check(assemble_fourier(pot, z))
                all_ok = all_ok and rep.ok
                c, r = rep.centers, rep.radii
                for i in range(len(c)):
                    for j in range(i + 1, len(c)):
                        worst_ratio = max(
                            worst_ratio, (r[i] + r[j]) / abs(c[i] - c[j])
                        )
        results.append(
            CheckResult(
                name=f"disc separation q={periods}",
                passed=all_ok and worst_ratio < 1.0,
                residual=worst_ratio,
                detail="17 potentials x 10 region samples",
            )
        )
    return results


def asymptotic_matching_suite(seed: int = 0) -> list[CheckResult]:
    """Eigenvalues track their leading diagonal terms within the surrogate
    bound, and the correction settles along a growing-multiplier ray."""
    rng = np.random.default_rng(seed)
    results = []
    for periods in ((2,), (3,), (2, 2)):
        cfg = LatticeConfig(periods)
        for trial in range(2):
            pot = _random_complex_potential(cfg, rng)
            rep = asymptotics_check(pot, n_samples=8, seed=seed + trial)
            ratio = rep.max_residual / rep.bound if rep.bound > 0 else 0.0
            results.append(
                CheckResult(
                    name=f"asymptotic match q={periods} #{trial}",
                    passed=rep.ok,
                    residual=ratio,
                    detail=f"max residual {rep.max_residual:.3e} vs bound {rep.bound:.3e}",
                )
            )
    return results


def gap_dichotomy_1d_suite(seed: int = 0) -> list[CheckResult]:
    """Real one-dimensional potentials: nonconstant implies a spectral gap,
    constant implies none."""
    rng = np.random.default_rng(seed)
    results = []
    min_width = np.inf
    all_gapped = True
    for trial in range(20):
        q1 = int(rng.integers(2, 6))
        pot = _random_real_nonconstant(LatticeConfig((q1,)), rng, min_mag=0.1)
        verdict = borg_check_1d(pot)
        ok = verdict.verdict == "gapped" and verdict.agrees
        all_gapped = all_gapped and ok
        if verdict.gaps:
            min_width = min(min_width, min(g.width for g in verdict.gaps))
    results.append(
        CheckResult(
            name="nonconstant potentials gapped",
            passed=all_gapped,
            residual=float(min_width),
            detail="20 random draws, q1 in 2..5; residual is the smallest gap width",
        )
    )
    all_gapless = True
    for c, q1 in ((0.0, 2), (1.5, 3), (-2.0, 4), (0.3, 5), (-0.7, 6)):
        verdict = borg_check_1d(constant(LatticeConfig((q1,)), c))
        all_gapless = all_gapless and verdict.verdict == "constant-like" and verdict.agrees
    results.append(
        CheckResult(
            name="constant potentials gapless",
            passed=all_gapless,
            residual=0.0,
            detail="5 constants, q1 in 2..6",
        )
    )
    return results


def class_counting_suite(seed: int = 0) -> list[CheckResult]:
    """Enumeration of the entire-graph potentials finds the expected class
    and solution counts for the exactly known small cases."""
    results = []
    enum2 = enumerate_Xe(LatticeConfig((2,)), seed=seed)
    ok2 = (
        enum2.class_count == 2
        and enum2.total_solutions == 3
        and enum2.count_within_bound
        and enum2.complete
    )
    results.append(
        CheckResult(
            name="counting q=(2)",
            passed=ok2,
            residual=max(enum2.residuals.values(), default=0.0),
            detail=f"classes={enum2.class_count}, solutions={enum2.total_solutions}, bound={enum2.bound}",
        )
    )
    enum3 = enumerate_Xe(LatticeConfig((3,)), seed=seed)
    ok3 = enum3.class_count == 3 and enum3.count_within_bound and enum3.complete
    results.append(
        CheckResult(
            name="counting q=(3)",
            passed=ok3,
            residual=max(enum3.residuals.values(), default=0.0),
            detail=f"classes={enum3.class_count}, solutions={enum3.total_solutions}, bound={enum3.bound}",
        )
    )
    return results


SUITES = {
    "lemma21": conjugation_identity_suite,
    "gershgorin": disc_localization_suite,
    "asymptotics": asymptotic_matching_suite,
    "borg1d": gap_dichotomy_1d_suite,
    "counting": class_counting_suite,
}


def run_suite(name: str, seed: int = 0) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seed=seed)
