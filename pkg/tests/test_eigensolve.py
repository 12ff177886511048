import numpy as np
import pytest

from blochlab import (
    LatticeConfig,
    OmegaDomain,
    OutsideOmegaError,
    Potential,
    asymptotics_check,
    asymptotics_residual_bound,
    assemble_fourier,
    dft,
    eigenvalues,
    gershgorin_check,
    min_root_gap,
    separation_lower_bound,
    sort_complex,
)
from blochlab.eigensolve import leading_diagonal_terms


def test_sort_is_lexicographic_real_then_imag():
    vals = np.array([1.0 + 0j, 2j, -3.0 + 0j])
    np.testing.assert_allclose(sort_complex(vals), [-3.0, 2j, 1.0])
    # ties on the real part fall back to the imaginary part
    vals = np.array([1.0 + 1j, 1.0 - 1j, 0.0 + 0j])
    np.testing.assert_allclose(sort_complex(vals), [0.0, 1.0 - 1j, 1.0 + 1j])


def test_hermitian_matrices_get_real_spectra():
    rng = np.random.default_rng(6)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    h = a + a.conj().T
    spec = eigenvalues(h)
    assert spec.hermitian
    assert np.all(spec.eigenvalues.imag == 0)
    want = np.linalg.eigvalsh(h)
    np.testing.assert_allclose(spec.eigenvalues.real, want, atol=1e-10)


def test_general_matrices_match_numpy():
    rng = np.random.default_rng(13)
    for _ in range(10):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        spec = eigenvalues(a)
        assert not spec.hermitian
        got = np.sort_complex(spec.eigenvalues)
        want = np.sort_complex(np.linalg.eigvals(a))
        np.testing.assert_allclose(got, want, atol=1e-9)


def test_charpoly_product_and_multiplicities():
    spec = eigenvalues(np.diag([2.0, 2.0, -1.0]).astype(complex))
    t = 0.5 + 0.1j
    assert spec.charpoly_product(t) == pytest.approx((2 - t) ** 2 * (-1 - t))
    mults = dict(spec.multiplicities(1e-9))
    assert mults == {2.0: 2, -1.0: 1}


def test_gershgorin_verdicts():
    ok = gershgorin_check(np.array([[5.0, 0.1], [0.1, -5.0]], dtype=complex))
    assert ok.disjoint and ok.one_per_disc and ok.ok
    bad = gershgorin_check(np.array([[1.0, 3.0], [3.0, 1.5]], dtype=complex))
    assert not bad.disjoint
    assert bad.one_per_disc is None
    assert not bad.ok


def test_omega_constant_small_case():
    # q=(2): min root gap is 2, so c1 = 100 * 1 * (1 + sup|V|) / 2
    cfg = LatticeConfig((2,))
    pot = Potential(cfg, [1.0, -1.0])
    omega = OmegaDomain.for_potential(pot)
    assert omega.c1 == pytest.approx(100.0)
    assert omega.dim == 1


def test_omega_membership_and_sampling():
    cfg = LatticeConfig((2, 3))
    pot = Potential(cfg, np.ones(6) * 0.5)
    omega = OmegaDomain.for_potential(pot)
    rng = np.random.default_rng(3)
    pts = omega.sample(rng, 25)
    for z in pts:
        assert omega.contains(z)
    # first axis must dominate: shrinking z_1 leaves the domain
    z = pts[0].copy()
    z[0] = 1.0
    assert not omega.contains(z)


def test_separation_is_the_leading_term_gap_and_respects_floor():
    rng = np.random.default_rng(19)
    for periods in ((2,), (3,), (2, 2)):
        cfg = LatticeConfig(periods)
        pot = Potential(
            cfg, rng.normal(size=cfg.cell_size) + 1j * rng.normal(size=cfg.cell_size)
        )
        omega = OmegaDomain.for_potential(pot)
        for z in omega.sample(rng, 5):
            sep = separation_lower_bound(cfg, z, omega)
            lead = leading_diagonal_terms(cfg, z)
            gaps = [
                abs(lead[i] - lead[j])
                for i in range(len(lead))
                for j in range(i + 1, len(lead))
            ]
            assert sep == pytest.approx(min(gaps))
            assert sep >= 0.5 * min_root_gap(cfg) * omega.c1


def test_eigenvalues_stay_within_surrogate_of_leading_terms():
    # the perturbed spectrum cannot drift from the centers by more than the
    # residual bound, so discs separated by the floor keep them apart
    rng = np.random.default_rng(29)
    cfg = LatticeConfig((3,))
    pot = Potential(cfg, rng.normal(size=3) + 1j * rng.normal(size=3))
    omega = OmegaDomain.for_potential(pot)
    bound = asymptotics_residual_bound(pot, omega)
    for z in omega.sample(rng, 5):
        ev = np.linalg.eigvals(assemble_fourier(pot, z).entries)
        lead = leading_diagonal_terms(cfg, z)
        for lam in ev:
            assert np.min(np.abs(lead - lam)) <= bound


def test_separation_bound_outside_domain_raises():
    cfg = LatticeConfig((2,))
    pot = Potential(cfg, [0.5, -0.5])
    omega = OmegaDomain.for_potential(pot)
    with pytest.raises(OutsideOmegaError):
        separation_lower_bound(cfg, np.array([1.0 + 0j]), omega)


def test_single_site_separation_is_infinite():
    cfg = LatticeConfig((1,))
    pot = Potential(cfg, [0.0])
    omega = OmegaDomain.for_potential(pot)
    z = omega.sample(np.random.default_rng(0), 1)[0]
    assert separation_lower_bound(cfg, z, omega) == np.inf


def test_asymptotics_report_ok_for_random_potentials():
    rng = np.random.default_rng(23)
    for periods in ((2,), (3,), (2, 2)):
        cfg = LatticeConfig(periods)
        pot = Potential(
            cfg, rng.normal(size=cfg.cell_size) + 1j * rng.normal(size=cfg.cell_size)
        )
        rep = asymptotics_check(pot, n_samples=8, seed=1)
        assert rep.bijective
        assert rep.max_residual <= rep.bound
        assert rep.ray_ok
        assert rep.ok


def test_surrogate_bound_formula():
    cfg = LatticeConfig((2,))
    pot = Potential(cfg, [1.0 + 1j, -0.5])
    omega = OmegaDomain.for_potential(pot)
    want = dft(pot).l1_norm + 4.0 * 1 / omega.c1
    assert asymptotics_residual_bound(pot, omega) == pytest.approx(want)
