import math

import numpy as np
import pytest

import sskpca


def test_two_moons_shapes_and_labels():
    x, y = sskpca.two_moons(100, noise=0.05, labeled_per_class=4, seed=3)
    assert x.shape == (100, 2)
    assert y.shape == (100,)
    assert (y == 1).sum() == 4
    assert (y == -1).sum() == 4
    x2, y2 = sskpca.two_moons(100, noise=0.05, labeled_per_class=4, seed=3)
    np.testing.assert_array_equal(x, x2)
    np.testing.assert_array_equal(y, y2)


def test_gaussian_kernel_properties():
    x, _ = sskpca.two_gaussians(40, separation=2.0, dims=3, labeled_per_class=5, seed=7)
    k = sskpca.gaussian_kernel(x, 0.5)
    assert k.shape == (40, 40)
    np.testing.assert_allclose(np.diag(k), 1.0, atol=1e-14)
    np.testing.assert_allclose(k, k.T, atol=1e-14)
    assert np.linalg.eigvalsh(k).min() > -1e-10


def test_kpca_normalization_and_order():
    x, _ = sskpca.two_moons(60, seed=5)
    k = sskpca.gaussian_kernel(x, 2.0)
    fit = sskpca.kpca_fit(x, 2.0, centered=True, components=3)
    alphas = fit["alphas"]
    values = fit["eigenvalues"]
    assert alphas.shape == (60, 3)
    assert values[0] >= values[1] >= values[2] > 0
    for j in range(3):
        a = alphas[:, j]
        assert abs(a @ k @ a - 1.0) < 1e-8
    # centered training values sum to ~0
    assert abs(fit["training_values"][:, 0].sum()) < 1e-6


def test_mv_limit_matches_kpca():
    x, y = sskpca.two_moons(60, seed=5)
    base = sskpca.kpca_fit(x, 2.0, components=1)["alphas"][:, 0]
    mv = sskpca.mv_kpca_fit(x, y, 2.0, c=0.0, components=1)["alphas"][:, 0]
    cos = abs(base @ mv) / (np.linalg.norm(base) * np.linalg.norm(mv))
    assert cos > 1 - 1e-8


def test_ls_fit_respects_constraint_and_labels():
    x, y = sskpca.two_moons(120, noise=0.05, labeled_per_class=6, seed=9)
    fit = sskpca.ls_kpca_fit(x, y, gamma=5.0, c=100.0, s2=120.0)
    assert fit["solver"]["residual"] < 1e-8
    f = fit["training_values"]
    labeled = y != 0
    assert (np.sign(f[labeled]) == y[labeled]).all()


def test_lr_fit_converges():
    x, y = sskpca.two_moons(80, noise=0.05, labeled_per_class=6, seed=11)
    fit = sskpca.lr_kpca_fit(x, y, gamma=5.0, c=10.0, s2=10.0)
    assert fit["converged"]
    objectives = [row["objective"] for row in fit["trace"]]
    assert objectives[0] >= objectives[-1]


def test_predict_matches_training_values():
    x, y = sskpca.two_moons(60, seed=13)
    fit = sskpca.ls_kpca_fit(x, y, gamma=2.0, c=10.0, s2=60.0)
    out = sskpca.predict(
        x,
        fit["alpha"],
        2.0,
        x,
        centered=fit["centered"],
        centering_mean=fit["centering_mean"],
    )
    np.testing.assert_allclose(out, fit["training_values"], atol=1e-10)


def test_solve_secular_hand_case():
    sol = sskpca.solve_secular(np.eye(3), np.array([1.0, 0.0, 0.0]), np.eye(3), 4.0)
    assert abs(sol["zeta"] - 0.5) < 1e-10
    np.testing.assert_allclose(sol["alpha"], [2.0, 0.0, 0.0], atol=1e-10)
    assert abs(sol["objective"]) < 1e-10


def test_threshold_head_midpoint():
    b = sskpca.threshold_head(
        np.array([-1.0, 0.0, 1.0, 2.0]), np.array([-1.0, -1.0, 1.0, 1.0])
    )
    assert abs(b - 0.5) < 1e-12


def test_risk_bound_values():
    const = sskpca.risk_bound_constant()
    assert const < 5.05
    assert abs(const - math.sqrt(32.0 * math.log(4.0 * math.e) / 3.0)) < 1e-12
    r = 1.0 / 16.0 + 1.0 / 64.0
    expected = (
        0.1
        + math.sqrt(2.0 * 4.0 * 2.0 / (16.0 * 64.0))
        + const * r * 4.0
        + math.sqrt(2.0 * r * math.log(1.0 / 0.05))
    )
    got = sskpca.risk_bound(0.1, 4.0, 2.0, 16, 64, delta=0.05)
    assert abs(got - expected) < 1e-12
    assert sskpca.risk_bound_general(0.1, 1.0, 10.0, 16, 64, 0.05) > 0.1


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        sskpca.two_moons(31)  # odd size
    with pytest.raises(ValueError):
        x, y = sskpca.two_moons(40, seed=2)
        sskpca.ls_kpca_fit(x, y, gamma=1.0, c=-1.0)


def test_transductive_error():
    pred = np.array([1, -1, 1, 1], dtype=np.int32)
    truth = np.array([1, -1, -1, 1], dtype=np.int32)
    assert sskpca.transductive_error(pred, truth) == pytest.approx(0.25)
