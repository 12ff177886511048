import numpy as np
import pytest

from blochlab import (
    ConfigMismatchError,
    LatticeConfig,
    Potential,
    constant,
    dft,
    idft,
    mean,
    separable,
    translate,
    zero,
)
from blochlab.potential import require_same_cfg


def test_constructor_validates_length():
    cfg = LatticeConfig((2, 2))
    with pytest.raises(ValueError):
        Potential(cfg, [1.0, 2.0, 3.0])


def test_real_detection_and_norm():
    cfg = LatticeConfig((3,))
    assert Potential(cfg, [1.0, -2.0, 0.5]).is_real
    assert not Potential(cfg, [1.0, 2j, 0.0]).is_real
    assert Potential(cfg, [1.0, -2.0, 0.5]).sup_norm == pytest.approx(2.0)


def test_constant_and_zero():
    cfg = LatticeConfig((2, 3))
    c = constant(cfg, 1 - 2j)
    assert np.all(c.values == 1 - 2j)
    assert zero(cfg).sup_norm == 0.0
    assert mean(c) == pytest.approx(1 - 2j)


def test_dft_two_site_oracle():
    # q=(2), V=(a,b): hat V(0) = (a+b)/2, hat V(1) = (a-b)/2
    cfg = LatticeConfig((2,))
    a, b = 1.5 - 0.5j, -0.25 + 2.0j
    fc = dft(Potential(cfg, [a, b]))
    assert fc.at((0,)) == pytest.approx((a + b) / 2)
    assert fc.at((1,)) == pytest.approx((a - b) / 2)
    # frequency indices wrap around the cell
    assert fc.at((-1,)) == pytest.approx(fc.at((1,)))


def test_dft_round_trip():
    rng = np.random.default_rng(7)
    for periods in ((2,), (3,), (2, 3), (4, 2), (2, 2, 2)):
        cfg = LatticeConfig(periods)
        pot = Potential(cfg, rng.normal(size=cfg.cell_size) + 1j * rng.normal(size=cfg.cell_size))
        back = idft(dft(pot))
        np.testing.assert_allclose(back.values, pot.values, atol=1e-13)


def test_l1_norm_oracle():
    cfg = LatticeConfig((2,))
    fc = dft(Potential(cfg, [2.0, 0.0]))
    # coefficients are (1, 1)
    assert fc.l1_norm == pytest.approx(2.0)


def test_separable_is_a_sum_over_axes():
    cfg = LatticeConfig((2, 3))
    a = np.array([1.0, -1.0])
    b = np.array([0.5j, 2.0, -0.5])
    pot = separable(cfg, [a, b])
    for i in range(2):
        for j in range(3):
            assert pot.at((i, j)) == pytest.approx(a[i] + b[j])


def test_translate_matches_roll():
    rng = np.random.default_rng(3)
    cfg = LatticeConfig((3, 2))
    pot = Potential(cfg, rng.normal(size=6))
    shifted = translate(pot, (1, 0))
    # W(n) = V(n + shift), with wrap across the cell boundary
    assert shifted.at((1, 0)) == pytest.approx(pot.at((2, 0)))
    assert shifted.at((2, 1)) == pytest.approx(pot.at((0, 1)))
    # translating by the full period is a no-op
    np.testing.assert_allclose(translate(pot, (3, 2)).values, pot.values)


def test_mixed_cfg_rejected():
    pa = zero(LatticeConfig((2,)))
    pb = zero(LatticeConfig((3,)))
    with pytest.raises(ConfigMismatchError):
        require_same_cfg(pa, pb)


def test_values_are_frozen():
    pot = zero(LatticeConfig((2,)))
    with pytest.raises(ValueError):
        pot.values[0] = 1.0
