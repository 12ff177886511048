import numpy as np
import pytest

from blochlab import LatticeConfig, fundamental_domain, min_root_gap, reduce_to_cell, root_of_unity


def test_config_basics():
    cfg = LatticeConfig((2, 3))
    assert cfg.dim == 2
    assert cfg.cell_size == 6
    assert cfg.sites[0] == (0, 0)
    assert cfg.sites[-1] == (1, 2)


def test_rejects_bad_periods():
    with pytest.raises(ValueError):
        LatticeConfig((0,))
    with pytest.raises(ValueError):
        LatticeConfig((2, -1))
    with pytest.raises(ValueError):
        LatticeConfig(())


def test_sites_are_row_major():
    cfg = LatticeConfig((2, 3))
    expected = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert list(cfg.sites) == expected
    assert fundamental_domain(cfg) == expected


def test_site_index_inverts_sites():
    cfg = LatticeConfig((3, 2, 2))
    for i, site in enumerate(cfg.sites):
        assert cfg.site_index(site) == i


def test_root_of_unity_values():
    # axis argument is 1-based
    cfg = LatticeConfig((4,))
    assert root_of_unity(cfg, 1, 0) == pytest.approx(1.0)
    assert root_of_unity(cfg, 1, 1) == pytest.approx(1j)
    assert root_of_unity(cfg, 1, 2) == pytest.approx(-1.0)
    # index is taken mod the period
    assert root_of_unity(cfg, 1, 5) == pytest.approx(1j)
    with pytest.raises(ValueError):
        root_of_unity(cfg, 0, 0)


def test_reduce_to_cell_wraps():
    cfg = LatticeConfig((2, 3))
    assert reduce_to_cell(cfg, (-1, 7)) == (1, 1)
    assert reduce_to_cell(cfg, (2, 3)) == (0, 0)


def test_min_root_gap_small_cases():
    # q=2: roots {1,-1}, gap 2; q=3: |1 - e^{2pi i/3}| = sqrt(3); q=4: sqrt(2)
    assert min_root_gap(LatticeConfig((2,))) == pytest.approx(2.0)
    assert min_root_gap(LatticeConfig((3,))) == pytest.approx(np.sqrt(3.0))
    assert min_root_gap(LatticeConfig((4,))) == pytest.approx(np.sqrt(2.0))
    # mixed cell: the smallest gap over all axes
    assert min_root_gap(LatticeConfig((2, 4))) == pytest.approx(np.sqrt(2.0))
