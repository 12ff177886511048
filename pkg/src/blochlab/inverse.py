"""Diagonal inverse eigenvalue problem and the exotic potential families.

Given a base matrix M and a target multiset of eigenvalues, a diagonal
correction always exists (with at most N! solutions); we find the
solutions by Newton iteration on characteristic-polynomial coefficients
from many random starts. The exotic construction instantiates this with
the free Floquet matrix at quasimomentum zero and the factored target
spectrum, producing the nonconstant complex potentials whose Bloch variety
carries an entire graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from . import kernels
from .errors import ConfigMismatchError, SolveBudgetError
from .floquet import assemble_direct
from .lattice import LatticeConfig
from .potential import Potential, mean, separable, zero
from .variety import IDENTITY_TOLERANCE, factorization_residual, floquet_isospectral

EIG_VERIFY_TOLERANCE = 1e-7
DEDUP_TOLERANCE = 1e-6
# linkage inflation for iterates stalled at a rank-deficient root; genuinely
# distinct corrections in the families built here sit more than 1 apart
STALL_FACTOR = 50.0
NEWTON_TOLERANCE = 1e-12
NEWTON_MAX_ITER = 100
NEWTON_BLOWUP = 1e3
POLISH_ITERATIONS = 4
ATTEMPTS_PER_FACTORIAL = 200
MEAN_TOLERANCE = 1e-9


@dataclass(frozen=True)
class InverseProblem:
    """Base matrix plus target eigenvalue multiset (with multiplicity)."""

    matrix: np.ndarray
    targets: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=np.complex128)
        t = np.asarray(self.targets, dtype=np.complex128).reshape(-1)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"base matrix must be square, got shape {m.shape}")
        if m.shape[0] < 1:
            raise ValueError("need at least a 1x1 problem")
        if t.shape[0] != m.shape[0]:
            raise ValueError("one target eigenvalue per matrix row required")
        m = m.copy()
        t = t.copy()
        m.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "targets", t)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def multiset_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Smallest max-norm matching distance between two equal-length complex
    multisets; exact over permutations for small lengths."""
    av = np.asarray(a, dtype=np.complex128).reshape(-1)
    bv = np.asarray(b, dtype=np.complex128).reshape(-1)
    if av.shape != bv.shape:
        raise ValueError("multisets must have equal size")
    n = av.shape[0]
    if n <= 7:
        best = math.inf
        for perm in permutations(range(n)):
            d = float(np.max(np.abs(av - bv[list(perm)])))
            if d < best:
                best = d
        return best
    order = np.lexsort((av.imag, av.real))
    order_b = np.lexsort((bv.imag, bv.real))
    return float(np.max(np.abs(av[order] - bv[order_b])))


def _sorted_candidates(cands: list[np.ndarray]) -> list[np.ndarray]:
    return sorted(
        cands,
        key=lambda v: tuple(np.column_stack((v.real, v.imag)).ravel().tolist()),
    )


def _dedupe(cands: list[np.ndarray], tol: float) -> list[np.ndarray]:
    kept: list[np.ndarray] = []
    for x in _sorted_candidates(cands):
        if all(float(np.max(np.abs(x - k))) > tol for k in kept):
            kept.append(x)
    return kept


def _stall_radius(m: np.ndarray, target_tail: np.ndarray, x: np.ndarray) -> float:
    """Distance below which nearby candidates cannot be told apart from x.

    One extra Newton step moves a fully converged iterate by rounding noise
    only, so the radius stays at the dedup tolerance. Where the Jacobian
    drops rank the step keeps bouncing across the attainable-accuracy ball
    and its size measures that ball directly.
    """
    x1, _, _, _ = kernels.newton_diagonal(
        m, target_tail, x, max_iter=1, tol=0.0, blowup=NEWTON_BLOWUP,
    )
    return max(DEDUP_TOLERANCE, STALL_FACTOR * float(np.max(np.abs(x1 - x))))


def _merge_stalled_clusters(
    m: np.ndarray,
    target_tail: np.ndarray,
    targets: np.ndarray,
    cands: list[np.ndarray],
) -> list[np.ndarray]:
    """Single-linkage merge of candidates Newton cannot separate.

    At a root of multiplicity mu double precision pins iterates only to a
    ball of radius about tol**(1/mu), which can exceed the dedup tolerance
    (mu >= 3 already does). Candidates link whenever one lies inside the
    other's stall radius; each cluster keeps its best-verified member.
    """
    if len(cands) <= 1:
        return list(cands)
    radii = [_stall_radius(m, target_tail, x) for x in cands]
    parent = list(range(len(cands)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            gap = float(np.max(np.abs(cands[i] - cands[j])))
            if gap <= max(radii[i], radii[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[np.ndarray]] = {}
    for i, x in enumerate(cands):
        groups.setdefault(find(i), []).append(x)
    merged = []
    for members in groups.values():
        best = min(
            members,
            key=lambda v: multiset_distance(
                np.linalg.eigvals(m + np.diag(v)), targets
            ),
        )
        merged.append(best)
    return merged


def solve_diagonal_inverse(
    problem: InverseProblem,
    attempts: int | None = None,
    seed: int = 0,
) -> list[np.ndarray]:
    """All diagonal corrections found for the problem, deduplicated and
    verified.

    Multistart Newton on the coefficient residuals: starts drawn from the
    complex disc of radius 2(|M| + max|target|), budget 200*N! unless
    overridden. Converged iterates get a few extra polish steps, then
    iterates stalled around the same rank-deficient root are merged by
    stall-radius linkage. Every survivor is re-verified by a direct
    eigensolve; nothing is returned on the solver's word alone.
    """
    m = problem.matrix
    n = problem.size
    budget = attempts if attempts is not None else ATTEMPTS_PER_FACTORIAL * math.factorial(n)
    if budget < 1:
        raise ValueError("attempt budget must be positive")
    target_tail = np.poly(problem.targets)[1:].astype(np.complex128)
    radius = 2.0 * (float(np.linalg.norm(m, 2)) + float(np.max(np.abs(problem.targets))))
    rng = np.random.default_rng(seed)

    converged: list[np.ndarray] = []
    for _ in range(budget):
        x0 = (
            radius
            * np.sqrt(rng.uniform(0.0, 1.0, size=n))
            * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size=n))
        )
        x, _, status, _ = kernels.newton_diagonal(
            m, target_tail, x0,
            max_iter=NEWTON_MAX_ITER, tol=NEWTON_TOLERANCE, blowup=NEWTON_BLOWUP,
        )
        if status != kernels.CONVERGED:
            continue
        # polish: a multiple root leaves a ~sqrt(tol) cluster; a few more
        # steps shrink it below the dedup tolerance (no-ops at simple roots)
        x, _, _, _ = kernels.newton_diagonal(
            m, target_tail, x,
            max_iter=POLISH_ITERATIONS, tol=0.0, blowup=NEWTON_BLOWUP,
        )
        converged.append(np.asarray(x, dtype=np.complex128))

    survivors = _dedupe(converged, DEDUP_TOLERANCE)
    merged = _merge_stalled_clusters(m, target_tail, problem.targets, survivors)

    solutions = []
    for x in _sorted_candidates(merged):
        achieved = np.linalg.eigvals(m + np.diag(x))
        if multiset_distance(achieved, problem.targets) <= EIG_VERIFY_TOLERANCE:
            solutions.append(x)
    if not solutions:
        raise SolveBudgetError(
            f"no verified solution in {budget} attempts "
            f"({len(converged)} converged starts); a diagonal solution is "
            "guaranteed to exist, so raise the budget or check conditioning"
        )
    return solutions


@dataclass(frozen=True)
class ExoticFamily:
    """Zero-mean 1D potentials whose variety carries the entire graph with
    offset l1 and constant 0, as found by the inverse solver."""

    cfg: LatticeConfig
    l1: int
    solutions: tuple[Potential, ...]
    residuals: tuple[float, ...]
    discarded: tuple[str, ...] = field(default_factory=tuple)

    @property
    def count(self) -> int:
        return len(self.solutions)

    def to_record(self) -> dict:
        return {
            "q1": self.cfg.periods[0],
            "l1": self.l1,
            "solutions": [
                [[float(v.real), float(v.imag)] for v in p.values]
                for p in self.solutions
            ],
            "residuals": [float(r) for r in self.residuals],
        }


def exotic_targets(q1: int, l1: int) -> np.ndarray:
    """Target spectrum for the 1D construction: exp(2*pi*i*m/q1)
    + exp(-2*pi*i*(m+l1)/q1) for m = 0..q1-1."""
    m = np.arange(q1)
    return np.exp(2j * np.pi * m / q1) + np.exp(-2j * np.pi * (m + l1) / q1)


def construct_exotic_1d(
    q1: int,
    l1: int,
    seed: int = 0,
    attempts: int | None = None,
    tolerance: float = IDENTITY_TOLERANCE,
) -> ExoticFamily:
    """Build the period-q1 exotic family at offset l1.

    Solves the diagonal inverse problem against the free Floquet matrix at
    quasimomentum zero with the factored target spectrum, then keeps only
    solutions that (a) have zero mean and (b) actually satisfy the split
    factorization at (l1, K=0) to the identity tolerance. Rejections are
    kept as diagnostics, not silently dropped.
    """
    q1 = int(q1)
    l1 = int(l1)
    if q1 < 1:
        raise ValueError("period must be positive")
    if not 0 <= l1 < q1:
        raise ValueError(f"offset l1 must lie in [0, {q1}), got {l1}")
    cfg = LatticeConfig((q1,))
    base = assemble_direct(zero(cfg), [0.0]).entries
    problem = InverseProblem(base, exotic_targets(q1, l1))
    xs = solve_diagonal_inverse(problem, attempts=attempts, seed=seed)

    solutions: list[Potential] = []
    residuals: list[float] = []
    discarded: list[str] = []
    for x in xs:
        pot = Potential(cfg, x)
        m = mean(pot)
        if abs(m) > MEAN_TOLERANCE:
            discarded.append(
                f"solution {np.round(x, 6).tolist()} has nonzero mean {m:.3e}"
            )
            continue
        residual, witness = factorization_residual(pot, (l1,), 0.0, seed=seed)
        if residual >= tolerance:
            discarded.append(
                f"solution {np.round(x, 6).tolist()} failed factorization at "
                f"l1={l1}: residual {residual:.3e}, worst point {witness['k']}"
            )
            continue
        solutions.append(pot)
        residuals.append(residual)
    if len(solutions) > math.factorial(q1):
        raise AssertionError(
            f"{len(solutions)} distinct solutions exceed the {q1}! bound; "
            "deduplication tolerance is inconsistent with the root spacing"
        )
    return ExoticFamily(
        cfg=cfg,
        l1=l1,
        solutions=tuple(solutions),
        residuals=tuple(residuals),
        discarded=tuple(discarded),
    )


def lift_separable(selections, cfg: LatticeConfig | None = None) -> tuple[Potential, tuple[int, ...]]:
    """Combine one 1D family solution per axis into a separable potential.

    Each selection is an ExoticFamily or an (ExoticFamily, index) pair;
    index defaults to the family's first solution. Returns the lifted
    potential and the combined offset (l_1, ..., l_d). The lift of zero-mean
    components is zero-mean, and it inherits the factorization at the
    combined offset with constant 0.
    """
    picks: list[tuple[ExoticFamily, int]] = []
    for sel in selections:
        if isinstance(sel, ExoticFamily):
            picks.append((sel, 0))
        else:
            fam, idx = sel
            picks.append((fam, int(idx)))
    if not picks:
        raise ValueError("need at least one axis")
    periods = tuple(fam.cfg.periods[0] for fam, _ in picks)
    lifted_cfg = LatticeConfig(periods)
    if cfg is not None and cfg.periods != lifted_cfg.periods:
        raise ConfigMismatchError(
            f"axis periods {lifted_cfg.periods} do not match requested {cfg.periods}"
        )
    components = []
    for fam, idx in picks:
        if not 0 <= idx < fam.count:
            raise ValueError(f"family at l1={fam.l1} has no solution index {idx}")
        components.append(fam.solutions[idx].values)
    lifted = separable(lifted_cfg, components)
    l = tuple(fam.l1 for fam, _ in picks)
    return lifted, l


@dataclass(frozen=True)
class XeEnumeration:
    """Exotic classes over one cell: a representative per offset l, counts,
    and the observed isospectral coincidences between distinct offsets."""

    cfg: LatticeConfig
    representatives: dict
    residuals: dict
    per_l_counts: dict
    class_count: int
    total_solutions: int
    bound: int
    count_within_bound: bool
    coincidences: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    complete: bool
    missing: tuple[tuple[int, ...], ...]


def _child_seed(seed: int, *key: int) -> int:
    return int(np.random.SeedSequence((seed, *key)).generate_state(1)[0])


def enumerate_Xe(
    cfg: LatticeConfig,
    seed: int = 0,
    attempts: int | None = None,
) -> XeEnumeration:
    """Enumerate the exotic equivalence classes for one cell.

    Per-axis 1D families are built once per (period, offset) pair and
    lifted separably to a representative for every offset l in the cell.
    Representatives for distinct l are cross-checked for isospectral
    coincidences (coincidences are reported, and collapse the class count).
    A missing family marks the enumeration incomplete rather than raising.
    """
    q_max = max(cfg.periods)
    if q_max > 4 or cfg.cell_size > 16:
        raise ValueError(
            "enumeration is budgeted for cells with every period <= 4 and "
            f"at most 16 sites; got periods {cfg.periods}"
        )
    families: dict[tuple[int, int], ExoticFamily | None] = {}
    for q in set(cfg.periods):
        for l1 in range(q):
            try:
                families[(q, l1)] = construct_exotic_1d(
                    q, l1, seed=_child_seed(seed, q, l1), attempts=attempts
                )
            except SolveBudgetError:
                families[(q, l1)] = None

    representatives: dict = {}
    residuals: dict = {}
    per_l_counts: dict = {}
    missing: list[tuple[int, ...]] = []
    total = 0
    for l in cfg.sites:
        fams = [families[(cfg.periods[j], l[j])] for j in range(cfg.dim)]
        if any(f is None or f.count == 0 for f in fams):
            missing.append(l)
            continue
        count = 1
        for f in fams:
            count *= f.count
        per_l_counts[l] = count
        total += count
        rep, rep_l = lift_separable(fams)
        residual, _ = factorization_residual(rep, rep_l, 0.0, seed=seed)
        representatives[l] = rep
        residuals[l] = residual

    # distinct offsets must give distinct characteristic polynomials;
    # any observed coincidence merges their classes and is reported
    labels = list(representatives)
    parent = {l: l for l in labels}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    coincidences: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for i, la in enumerate(labels):
        for lb in labels[i + 1:]:
            same, _ = floquet_isospectral(
                representatives[la], representatives[lb], seed=seed
            )
            if same:
                coincidences.append((la, lb))
                ra, rb = find(la), find(lb)
                if ra != rb:
                    parent[ra] = rb
    class_count = len({find(l) for l in labels})
    bound = cfg.cell_size * math.factorial(cfg.cell_size)
    return XeEnumeration(
        cfg=cfg,
        representatives=representatives,
        residuals=residuals,
        per_l_counts=per_l_counts,
        class_count=class_count,
        total_solutions=total,
        bound=bound,
        count_within_bound=total <= bound,
        coincidences=tuple(coincidences),
        complete=not missing,
        missing=tuple(missing),
    )
