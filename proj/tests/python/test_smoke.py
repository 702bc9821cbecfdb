"""Smoke tests for the _capstruct extension module."""

import math

import pytest

import _capstruct as cs


def test_gini_hand_values():
    assert cs.gini([7.0, 7.0, 7.0]) == 0.0
    assert cs.gini([1.0, 0.0, 0.0, 0.0]) == pytest.approx(0.75, abs=1e-12)
    assert cs.gini([3.0, 1.0]) == pytest.approx(0.25, abs=1e-12)


def test_concentration_ratio():
    assert cs.concentration_ratio([5.0, 3.0, 2.0], 1) == pytest.approx(0.5, abs=1e-12)
    assert cs.concentration_ratio([5.0, 3.0, 2.0], 3) == 1.0
    with pytest.raises(cs.CapstructError):
        cs.concentration_ratio([0.0, 0.0], 1)


def test_lorenz_curve_and_area():
    points = cs.lorenz_curve([1.0, 0.0])
    assert points[0] == (0.0, 0.0)
    assert points[1] == pytest.approx((0.5, 0.0))
    assert points[-1] == (1.0, 1.0)
    g = cs.gini([4.0, 1.0, 1.0])
    area = cs.lorenz_area([4.0, 1.0, 1.0])
    assert g == pytest.approx(1.0 - 2.0 * area, abs=1e-12)


def test_wasserstein():
    assert cs.wasserstein_uniform([0.7, 0.3], [0.5, 0.5]) == pytest.approx(0.2, abs=1e-12)
    assert cs.wasserstein_equal_n([0.6, 0.3, 0.1], [0.4, 0.4, 0.2]) == pytest.approx(
        0.4 / 3.0, abs=1e-12
    )
    # Weighted point masses.
    d = cs.wasserstein([0.0], [1.0], [1.0], [1.0])
    assert d == 1.0


def test_projection_hand_case():
    w = cs.project_capped_simplex([10.0, 0.0, 0.0], 0.5)
    assert list(w) == pytest.approx([0.5, 0.25, 0.25], abs=1e-10)
    with pytest.raises(cs.CapstructError):
        cs.project_capped_simplex([1.0, 0.0], 0.3)


def test_maximize_sharpe():
    res = cs.maximize_sharpe([0.1, 0.0], [[1.0, 0.0], [0.0, 1.0]], cap_b=0.6)
    assert list(res["weights"]) == pytest.approx([0.6, 0.4], abs=1e-6)
    assert res["converged"]
    value = cs.sharpe(res["weights"], [0.1, 0.0], [[1.0, 0.0], [0.0, 1.0]])
    assert value == pytest.approx(0.6 * 0.1 / math.sqrt(0.6**2 + 0.4**2), rel=1e-6)


def test_agglomerate_cut_and_order():
    dend = cs.agglomerate([[0, 1, 5], [1, 0, 5], [5, 5, 0]], ["A", "B", "C"])
    merges = dend.merges
    assert merges[0][:2] == (0, 1)
    assert merges[0][2] == pytest.approx(1.0)
    labels = dend.cut(2)
    assert labels[0] == labels[1] != labels[2]
    order = dend.leaf_order()
    assert sorted(order) == [0, 1, 2]
    assert abs(order.index(0) - order.index(1)) == 1


def test_portfolio_gini_modes():
    canonical = cs.portfolio_gini([3.0, 1.0], [0.5, 0.5])
    assert canonical == pytest.approx(0.25, abs=1e-12)
    literal = cs.portfolio_gini([3.0, 1.0], [0.5, 0.5], mode="paper_literal")
    assert literal == pytest.approx(4.0 * canonical, abs=1e-12)


def test_synthetic_csv_deterministic():
    a = cs.generate_synthetic_csv(assets=5, months=6, days=140, seed=9)
    b = cs.generate_synthetic_csv(assets=5, months=6, days=140, seed=9)
    assert a == b
    c = cs.generate_synthetic_csv(assets=5, months=6, days=140, seed=10)
    assert c != a
    header = a[0].splitlines()[0]
    assert header.startswith("date,")
    assert len(header.split(",")) == 6
