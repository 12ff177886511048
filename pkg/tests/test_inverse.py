import math

import numpy as np
import pytest

from blochlab import (
    ConfigMismatchError,
    InverseProblem,
    LatticeConfig,
    construct_exotic_1d,
    entire_graph_test,
    enumerate_Xe,
    exotic_targets,
    lift_separable,
    mean,
    multiset_distance,
    solve_diagonal_inverse,
)


def test_problem_validation():
    with pytest.raises(ValueError):
        InverseProblem(np.zeros((2, 3)), np.zeros(2))
    with pytest.raises(ValueError):
        InverseProblem(np.zeros((2, 2)), np.zeros(3))


def test_multiset_distance_permutation_invariant():
    rng = np.random.default_rng(1)
    a = rng.normal(size=5) + 1j * rng.normal(size=5)
    perm = rng.permutation(5)
    assert multiset_distance(a, a[perm]) == pytest.approx(0.0)
    b = a.copy()
    b[2] += 0.25
    assert multiset_distance(a, b) == pytest.approx(0.25)


def test_two_site_inverse_exact_algebra():
    # M = [[0,2],[2,0]], targets (0,0): trace gives x0+x1=0, determinant
    # gives x0 x1 = 4, so the solutions are exactly (2i,-2i) and (-2i,2i)
    m = np.array([[0.0, 2.0], [2.0, 0.0]], dtype=complex)
    problem = InverseProblem(m, np.array([0.0, 0.0], dtype=complex))
    sols = solve_diagonal_inverse(problem, attempts=100)
    assert len(sols) == 2
    found = sorted(sols, key=lambda x: x[0].imag)
    np.testing.assert_allclose(found[0], [-2j, 2j], atol=1e-7)
    np.testing.assert_allclose(found[1], [2j, -2j], atol=1e-7)


def test_planted_diagonal_recovered():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    planted = rng.normal(size=3) + 1j * rng.normal(size=3)
    targets = np.linalg.eigvals(m + np.diag(planted))
    sols = solve_diagonal_inverse(InverseProblem(m, targets), attempts=300)
    assert any(np.max(np.abs(x - planted)) < 1e-6 for x in sols)
    for x in sols:
        achieved = np.linalg.eigvals(m + np.diag(x))
        assert multiset_distance(achieved, targets) < 1e-7
    assert len(sols) <= math.factorial(3)


def test_rank_deficient_root_collapses_to_one_solution():
    # targets equal to the unperturbed spectrum force x=0 with multiplicity;
    # stalled Newton iterates must merge to a single reported solution
    m = np.array([[0.0, 2.0], [2.0, 0.0]], dtype=complex)
    sols = solve_diagonal_inverse(
        InverseProblem(m, np.array([2.0, -2.0], dtype=complex)), attempts=200
    )
    assert len(sols) == 1
    assert np.max(np.abs(sols[0])) < 1e-4


def test_attempt_budget_validation():
    m = np.eye(2, dtype=complex)
    with pytest.raises(ValueError):
        solve_diagonal_inverse(InverseProblem(m, np.zeros(2, dtype=complex)), attempts=0)


def test_exotic_targets_small_cases():
    # eta_m = r(m) + r(-(m+l1)) written out for small cells
    np.testing.assert_allclose(exotic_targets(2, 1), [0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(exotic_targets(2, 0), [2.0, -2.0], atol=1e-15)
    np.testing.assert_allclose(exotic_targets(3, 0), [2.0, -1.0, -1.0], atol=1e-14)
    np.testing.assert_allclose(exotic_targets(4, 2), [0.0, 2j, 0.0, -2j], atol=1e-15)


def test_exotic_two_site_family_is_exact():
    fam = construct_exotic_1d(2, 1)
    assert fam.count == 2
    vals = sorted((s.values for s in fam.solutions), key=lambda v: v[0].imag)
    np.testing.assert_allclose(vals[0], [-2j, 2j], atol=1e-7)
    np.testing.assert_allclose(vals[1], [2j, -2j], atol=1e-7)
    assert all(r < 1e-8 for r in fam.residuals)


def test_exotic_offset_zero_gives_zero_potential():
    fam = construct_exotic_1d(3, 0)
    assert fam.count == 1
    assert np.max(np.abs(fam.solutions[0].values)) < 1e-4


def test_exotic_families_are_zero_mean_and_verified():
    for q1, l1 in ((3, 1), (3, 2), (4, 1)):
        fam = construct_exotic_1d(q1, l1)
        assert 1 <= fam.count <= math.factorial(q1)
        for pot, residual in zip(fam.solutions, fam.residuals):
            assert abs(mean(pot)) < 1e-9
            assert residual < 1e-8
            assert entire_graph_test(pot).holds


def test_exotic_rejects_bad_offset():
    with pytest.raises(ValueError):
        construct_exotic_1d(3, 3)
    with pytest.raises(ValueError):
        construct_exotic_1d(0, 0)


def test_lift_separable_two_by_two():
    fam = construct_exotic_1d(2, 1)
    idx = [i for i, s in enumerate(fam.solutions) if abs(s.values[0] - 2j) < 1e-6][0]
    pot, l = lift_separable([(fam, idx), (fam, idx)], LatticeConfig((2, 2)))
    assert l == (1, 1)
    # V(n1,n2) = v(n1) + v(n2) with v = (2i,-2i)
    np.testing.assert_allclose(pot.values, [4j, 0.0, 0.0, -4j], atol=1e-6)
    assert abs(mean(pot)) < 1e-9
    cert = entire_graph_test(pot)
    assert cert.holds
    assert cert.l == (1, 1)


def test_lift_separable_cfg_mismatch():
    fam = construct_exotic_1d(2, 1)
    with pytest.raises(ConfigMismatchError):
        lift_separable([fam, fam], LatticeConfig((2, 3)))


def test_enumeration_two_site_cell():
    enum = enumerate_Xe(LatticeConfig((2,)))
    assert enum.class_count == 2
    assert enum.total_solutions == 3
    assert enum.bound == 4
    assert enum.count_within_bound
    assert enum.complete
    assert enum.missing == ()
    assert set(enum.representatives) == {(0,), (1,)}


def test_enumeration_three_site_cell():
    enum = enumerate_Xe(LatticeConfig((3,)))
    assert enum.class_count == 3
    assert enum.complete
    assert enum.total_solutions <= enum.bound


def test_enumeration_rejects_large_cells():
    with pytest.raises(ValueError):
        enumerate_Xe(LatticeConfig((5,)))
    with pytest.raises(ValueError):
        enumerate_Xe(LatticeConfig((2, 2, 2, 2, 2)))
