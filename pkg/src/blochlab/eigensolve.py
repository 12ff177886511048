"""Dense complex spectra and the perturbation checks that back them up.

Every eigenvalue list the package reports flows through `eigenvalues` so
sorting and the Hermitian fast path are applied uniformly. The rest of the
module covers the large-multiplier regime: the domain Omega where the
diagonal part of the Fourier-frame matrix dominates, Gershgorin
localization, separation of the leading diagonal terms, and the eigenvalue
asymptotics with their decay along rays in the first multiplier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EigenvalueMatchingError, OutsideOmegaError
from .floquet import FloquetMatrix, assemble_fourier
from .lattice import LatticeConfig, min_root_gap
from .potential import Potential, dft


def _entries_of(M) -> np.ndarray:
    if isinstance(M, FloquetMatrix):
        return M.entries
    return np.asarray(M, dtype=np.complex128)


def sort_complex(vals: np.ndarray) -> np.ndarray:
    """Sort by real part, ties broken by imaginary part."""
    v = np.asarray(vals, dtype=np.complex128).reshape(-1)
    return v[np.lexsort((v.imag, v.real))]


HERMITIAN_ROUTE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """All eigenvalues of one matrix, with algebraic multiplicity, sorted
    by real part then imaginary part."""

    eigenvalues: np.ndarray
    hermitian: bool

    def __post_init__(self) -> None:
        v = np.asarray(self.eigenvalues, dtype=np.complex128).reshape(-1).copy()
        v.setflags(write=False)
        object.__setattr__(self, "eigenvalues", v)

    def __len__(self) -> int:
        return self.eigenvalues.shape[0]

    def charpoly_product(self, t: complex) -> complex:
        """prod(lambda_i - t); matches det(M - t*I) of the source matrix."""
        return complex(np.prod(self.eigenvalues - t))

    def multiplicities(self, tol: float) -> list[tuple[complex, int]]:
        """Cluster the sorted eigenvalues into (value, multiplicity) pairs;
        values within tol of the running cluster head are merged."""
        out: list[tuple[complex, int]] = []
        for lam in self.eigenvalues:
            if out and abs(lam - out[-1][0]) <= tol:
                head, count = out[-1]
                out[-1] = (head, count + 1)
            else:
                out.append((complex(lam), 1))
        return out


def eigenvalues(M) -> Spectrum:
    """Spectrum of a dense complex matrix; Hermitian inputs take the
    symmetric path and come back real."""
    a = _entries_of(M)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    defect = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if defect <= HERMITIAN_ROUTE_TOLERANCE * scale:
        try:
            vals = np.linalg.eigvalsh(a).astype(np.complex128)
        except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
            raise EigenvalueMatchingError(
                f"symmetric eigensolve failed: {exc}; matrix scale {scale:.3e}"
            ) from exc
        return Spectrum(vals, hermitian=True)
    try:
        vals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        cond = float(np.linalg.cond(a)) if np.all(np.isfinite(a)) else math.inf
        raise EigenvalueMatchingError(
            f"eigensolve did not converge: {exc}; condition estimate {cond:.3e}"
        ) from exc
    return Spectrum(sort_complex(vals), hermitian=False)


@dataclass(frozen=True)
class GershgorinReport:
    """Row discs of a matrix and how the computed spectrum falls into them."""

    centers: np.ndarray
    radii: np.ndarray
    disjoint: bool
    one_per_disc: bool | None  # None when discs overlap (no claim made)
    spectrum: Spectrum

    @property
    def ok(self) -> bool:
        return self.disjoint and bool(self.one_per_disc)


def gershgorin_check(M) -> GershgorinReport:
    """Discs centered at diagonal entries with off-diagonal absolute row
    sums as radii; when pairwise disjoint, verifies each disc holds exactly
    one computed eigenvalue."""
    a = _entries_of(M)
    n = a.shape[0]
    centers = np.diag(a).copy()
    radii = np.sum(np.abs(a), axis=1) - np.abs(centers)
    disjoint = True
    for i in range(n):
        for j in range(i + 1, n):
            if abs(centers[i] - centers[j]) <= radii[i] + radii[j]:
                disjoint = False
                break
        if not disjoint:
            break
    spec = eigenvalues(a)
    one_per_disc: bool | None = None
    if disjoint:
        counts = np.zeros(n, dtype=int)
        matched = 0
        for lam in spec.eigenvalues:
            inside = np.abs(lam - centers) <= radii * (1 + 1e-12) + 1e-12
            if np.count_nonzero(inside) == 1:
                counts[np.argmax(inside)] += 1
                matched += 1
        one_per_disc = matched == n and bool(np.all(counts == 1))
    return GershgorinReport(centers, radii, disjoint, one_per_disc, spec)


@dataclass(frozen=True)
class OmegaDomain:
    """Multiplier region where the diagonal part dominates: |z_1| >= c1^d
    and, for axes j >= 2, c1^(d-j+1) <= |z_j| <= c1^(d-j+1) + 1."""

    c1: float
    dim: int

    def __post_init__(self) -> None:
        if self.c1 <= 1.0:
            raise ValueError("c1 must exceed 1")
        if self.dim < 1:
            raise ValueError("dimension must be positive")

    @classmethod
    def for_potential(cls, pot: Potential) -> "OmegaDomain":
        """Default constant: 100 * d * (1 + max|V|) / min_{j,m} |1 - r_j(m)|.

        Sized so the convolution part's Gershgorin radii stay an order of
        magnitude below the diagonal separation.
        """
        cfg = pot.cfg
        c1 = 100.0 * cfg.dim * (1.0 + pot.sup_norm) / min_root_gap(cfg)
        return cls(c1=c1, dim=cfg.dim)

    def shell_floor(self, axis: int) -> float:
        """Lower modulus bound for 1-based axis: c1^d for axis 1,
        c1^(d-j+1) for axis j >= 2."""
        if axis == 1:
            return self.c1 ** self.dim
        return self.c1 ** (self.dim - axis + 1)

    def contains(self, z) -> bool:
        zv = np.asarray(z, dtype=np.complex128).reshape(-1)
        if zv.shape[0] != self.dim:
            return False
        mods = np.abs(zv)
        if mods[0] < self.shell_floor(1) * (1 - 1e-12):
            return False
        for j in range(2, self.dim + 1):
            lo = self.shell_floor(j)
            if not (lo * (1 - 1e-12) <= mods[j - 1] <= lo + 1 + 1e-12):
                return False
        return True

    def sample(self, rng: np.random.Generator, count: int = 1) -> np.ndarray:
        """Random points of the region, shape (count, dim): modulus in
        [floor, floor+1] per axis with uniform phase."""
        mods = np.empty((count, self.dim))
        for j in range(1, self.dim + 1):
            mods[:, j - 1] = self.shell_floor(j) + rng.uniform(0.0, 1.0, size=count)
        phases = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size=(count, self.dim)))
        return mods * phases


def leading_diagonal_terms(cfg: LatticeConfig, z) -> np.ndarray:
    """sum_j r_j(n_j) z_j for every cell site n, in canonical site order."""
    zv = np.asarray(z, dtype=np.complex128).reshape(-1)
    qv = np.asarray(cfg.periods, dtype=np.float64)
    rho = np.exp(2j * np.pi * cfg.site_array / qv[None, :])
    return rho @ zv


def separation_lower_bound(cfg: LatticeConfig, z, omega: OmegaDomain) -> float:
    """Minimum pairwise distance of the leading diagonal terms at z.

    Guaranteed to be at least (1/2) * min_{j,m} |1 - r_j(m)| * c1 inside
    the region; returns +inf when the cell has a single site.
    """
    if not omega.contains(z):
        raise OutsideOmegaError(f"point {z!r} is outside the configured region")
    lead = leading_diagonal_terms(cfg, z)
    q = lead.shape[0]
    if q < 2:
        return math.inf
    sep = float(np.min(np.abs(lead[:, None] - lead[None, :])
                       + np.diag([math.inf] * q)))
    floor = 0.5 * min_root_gap(cfg) * omega.c1
    if sep < floor:
        raise AssertionError(
            f"separation {sep:.6e} fell below the guaranteed floor {floor:.6e}"
        )
    return sep


@dataclass(frozen=True)
class AsymptoticsReport:
    """Outcome of matching Fourier-frame eigenvalues to their leading
    diagonal terms over points of the region, plus the ray decay check."""

    n_samples: int
    bound: float
    max_residual: float
    bijective: bool
    ray_factors: tuple[float, ...]
    ray_diffs: list[float] = field(default_factory=list)
    ray_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.bijective and self.max_residual <= self.bound and self.ray_ok


def _match_bijectively(eigs: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Permutation p with candidate p[i] nearest to eigs[i]; raises if two
    eigenvalues claim the same candidate (spacing too small for the bound)."""
    q = eigs.shape[0]
    assign = np.full(q, -1, dtype=int)
    taken = np.zeros(q, dtype=bool)
    # greedy by best available match, tightest pairs first
    dist = np.abs(eigs[:, None] - candidates[None, :])
    order = np.argsort(dist, axis=None)
    filled = 0
    seen_eig = np.zeros(q, dtype=bool)
    for flat in order:
        i, j = divmod(int(flat), q)
        if seen_eig[i] or taken[j]:
            continue
        assign[i] = j
        seen_eig[i] = True
        taken[j] = True
        filled += 1
        if filled == q:
            break
    nearest = np.argmin(dist, axis=1)
    if not np.array_equal(np.sort(assign), np.arange(q)) or not np.array_equal(
        nearest, assign
    ):
        raise EigenvalueMatchingError(
            "eigenvalue-to-leading-term matching is not a nearest-neighbor "
            "bijection; the region constant is too small for this potential"
        )
    return assign


def asymptotics_residual_bound(pot: Potential, omega: OmegaDomain) -> float:
    """Surrogate for the O(1) eigenvalue error: l1 norm of the Fourier
    coefficients plus 4d/c1 for the inverse-multiplier diagonal terms."""
    return dft(pot).l1_norm + 4.0 * pot.cfg.dim / omega.c1


def asymptotics_check(
    pot: Potential,
    n_samples: int = 20,
    seed: int = 0,
    omega: OmegaDomain | None = None,
    ray_factors: tuple[float, ...] = (1.0, 2.0, 4.0, 8.0, 16.0),
) -> AsymptoticsReport:
    """Verify that each eigenvalue in the Fourier frame tracks its leading
    diagonal term on the region, and that the correction settles (Cauchy)
    along a ray where the first multiplier grows."""
    cfg = pot.cfg
    if omega is None:
        omega = OmegaDomain.for_potential(pot)
    rng = np.random.default_rng(seed)
    bound = asymptotics_residual_bound(pot, omega)
    points = omega.sample(rng, n_samples)
    max_residual = 0.0
    for z in points:
        lead = leading_diagonal_terms(cfg, z)
        spec = eigenvalues(assemble_fourier(pot, z))
        assign = _match_bijectively(spec.eigenvalues, lead)
        max_residual = max(
            max_residual, float(np.max(np.abs(spec.eigenvalues - lead[assign])))
        )

    # ray: scale z_1 only; the matched correction must converge, so the
    # consecutive differences shrink roughly geometrically
    base = points[0]
    ray_values = []
    for t in ray_factors:
        zt = base.copy()
        zt[0] = zt[0] * t
        lead = leading_diagonal_terms(cfg, zt)
        spec = eigenvalues(assemble_fourier(pot, zt))
        assign = _match_bijectively(spec.eigenvalues, lead)
        ray_values.append(spec.eigenvalues - lead[assign])
    diffs = [
        float(np.max(np.abs(ray_values[i + 1] - ray_values[i])))
        for i in range(len(ray_values) - 1)
    ]
    floor = 1e-9 * max(1.0, omega.shell_floor(1))
    ray_ok = all(
        diffs[i + 1] <= 0.7 * diffs[i] + floor for i in range(len(diffs) - 1)
    )
    return AsymptoticsReport(
        n_samples=n_samples,
        bound=bound,
        max_residual=max_residual,
        bijective=True,
        ray_factors=tuple(float(t) for t in ray_factors),
        ray_diffs=diffs,
        ray_ok=ray_ok,
    )
