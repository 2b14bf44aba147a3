import numpy as np
import pytest

import fans


def two_cliques(n=12):
    a = np.zeros((n, n))
    h = n // 2
    a[:h, :h] = 1.0
    a[h:, h:] = 1.0
    np.fill_diagonal(a, 0.0)
    return a


def test_version():
    assert fans.__version__


def test_graphon_values():
    p = fans.graphon_matrix("g0", [0.3, 0.5])
    assert p[0, 1] == pytest.approx(0.4)
    assert p[1, 0] == pytest.approx(0.4)
    with pytest.raises(ValueError):
        fans.graphon_matrix("g8", [0.1])


def test_simulate_shapes_and_determinism():
    s = fans.simulate("g3", 50, seed=4, features=["f1", "f4"], sigma=0.3)
    assert s["A"].shape == (50, 50)
    assert s["X"].shape == (50, 2)
    assert np.array_equal(s["A"], s["A"].T)
    assert set(np.unique(s["A"])) <= {0.0, 1.0}
    again = fans.simulate("g3", 50, seed=4, features=["f1", "f4"], sigma=0.3)
    assert np.array_equal(s["A"], again["A"])
    assert np.array_equal(s["X"], again["X"])


def test_dissimilarities():
    a = two_cliques()
    d = fans.d0_hat(a)
    assert d.shape == (12, 12)
    assert d[0, 1] == 0.0
    assert d[0, 11] > 0.0
    s = fans.s_hat(np.array([[0.0], [1.0], [3.0]]))
    assert s[0, 2] == pytest.approx(3.0)
    assert fans.d0_mod(a).shape == (12, 12)


def test_estimators_agree_on_identity():
    s = fans.simulate("g1", 80, seed=2, features=["f1"], sigma=0.3)
    nbs = fans.nbs_estimate(s["A"])
    same = fans.fans_estimate(s["A"], s["X"], lam=0.0, tie_correction=False)
    assert np.array_equal(nbs, same)
    for est in (fans.fans_estimate(s["A"], s["X"], lam=0.1), fans.usvt_estimate(s["A"]),
                fans.sas_estimate(s["A"])):
        assert est.shape == (80, 80)
        assert np.allclose(est, est.T)
        assert est.min() >= 0.0 and est.max() <= 1.0
    mse, mae = fans.mse_mae(nbs, s["P"])
    assert 0.0 < mse < mae < 1.0


def test_selection():
    s = fans.simulate("g3", 100, seed=5, features=["f1", "f2", "f3", "f4"], sigma=0.3)
    lam, mean_loss, losses = fans.cross_validate(s["A"], s["X"], repeats=3, seed=1)
    assert lam in [0.0, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0]
    assert len(mean_loss) == 7
    assert losses.shape == (7, 3)
    kept, taus = fans.screen_features(s["A"], s["X"])
    assert len(taus) == 4
    assert all(0 <= k < 4 for k in kept)
    assert fans.kendall_tau([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(2 / 3)
    assert fans.kendall_tau([1, 2, 3], [5, 5, 5]) is None


def test_evaluation():
    auc, fpr, tpr = fans.roc_auc([0.9, 0.8, 0.3, 0.1], [1, 0, 1, 0])
    assert auc == pytest.approx(0.75)
    assert fpr[0] == 0.0 and tpr[-1] == 1.0
    assert fans.paired_t_test([1.0, 2.0, 3.0], [4.0, 5.5, 6.0]) < 0.01


def test_link_prediction_two_cliques():
    a = two_cliques(20)
    pairs = [(i, j) for i in range(20) for j in range(i + 1, 20)]
    scores = fans.loo_link_predict(a, pairs=pairs, tie_correction=False)
    labels = [int(a[i, j]) for i, j in pairs]
    auc, _, _ = fans.roc_auc(scores, labels)
    assert auc == 1.0
    with pytest.raises(ValueError):
        fans.loo_link_predict(a, pairs=pairs, mode="fuzzy")


def test_errors_surface_as_value_error():
    with pytest.raises(ValueError):
        fans.d0_hat(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        fans.nbs_estimate(np.array([[0.0, 1.0], [0.0, 0.0]]))
