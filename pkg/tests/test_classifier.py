import numpy as np
import pytest

from beliefevo import reference as R
from beliefevo.classifier import (
    FUSIONS,
    SIGMA_FLOOR,
    Dataset,
    GaussianFeatureModel,
    builtin_iris,
    classify,
    cross_validate,
    cross_validate_many,
    feature_pmf,
    feature_pmfs,
    fit,
    fuse_batch,
    load_csv,
    predict,
    reports_to_csv,
)
from beliefevo.errors import ParseError


def _dataset(rows, labels, classes=("a", "b")):
    return Dataset(np.array(rows, dtype=float), np.array(labels), classes)


def _model(mean, std):
    mean, std = np.atleast_2d(mean).astype(float), np.atleast_2d(std).astype(float)
    return GaussianFeatureModel(mean, std, tuple(f"c{i}" for i in range(mean.shape[0])))


def test_fit_zero_variance_is_floored():
    model = fit(_dataset([[0], [0], [1], [1]], [0, 0, 1, 1]))
    assert model.mean[:, 0].tolist() == [0, 1]
    spread = np.std([0, 0, 1, 1], ddof=1)
    assert model.std[:, 0] == pytest.approx([SIGMA_FLOOR * spread] * 2)


def test_fit_translation_equivariant(rng):
    X = rng.normal(size=(20, 3))
    y = np.repeat([0, 1], 10)
    a = fit(_dataset(X, y))
    b = fit(_dataset(X + 5.0, y))
    assert np.allclose(b.mean, a.mean + 5.0)
    assert np.allclose(b.std, a.std)


def test_fit_requires_two_samples_per_class():
    with pytest.raises(ValueError):
        fit(_dataset([[0], [1], [2]], [0, 0, 1]))


def test_fit_on_iris_split():
    data = builtin_iris()
    model = fit(data.subset(np.arange(0, 150, 2)))
    assert model.mean.shape == (3, 4) and (model.std > 0).all()


def test_feature_pmf_density_dominance_and_symmetry():
    model = _model([[0.0], [10.0]], [[1.0], [1.0]])
    assert feature_pmf(0.0, model, 0).probs[0] > 0.99
    assert list(feature_pmf(5.0, model, 0).probs) == pytest.approx([0.5, 0.5], abs=1e-12)


def test_feature_pmf_underflow_fallback():
    model = _model([[0.0], [1.0], [2.0]], [[1e-3], [1e-3], [1e-3]])
    pmfs, fallback = feature_pmfs([[1.0 + 40e-3 + 1.0]], model)
    assert fallback[0, 0]
    assert pmfs[0, 0] == pytest.approx([1 / 3] * 3)
    # ten sigma is representable, so no fallback is needed
    pmfs, fallback = feature_pmfs([[-10e-3]], _model([[0.0], [0.0]], [[1e-3], [1e-3]]))
    assert not fallback[0, 0]
    assert pmfs[0, 0] == pytest.approx([0.5, 0.5])


def test_feature_pmfs_sum_to_one(rng):
    model = _model(rng.normal(size=(3, 5)), rng.uniform(0.01, 2, size=(3, 5)))
    X = rng.normal(scale=50, size=(40, 5))
    pmfs, _ = feature_pmfs(X, model)
    assert np.allclose(pmfs.sum(axis=2), 1.0)


@pytest.mark.parametrize("fusion", FUSIONS)
def test_single_feature_is_argmax(fusion):
    P = np.array([[[0.2, 0.5, 0.3]]])
    fused, _ = fuse_batch(P, fusion)
    assert fused[0].tolist() == [0.2, 0.5, 0.3]


@pytest.mark.parametrize("fusion", FUSIONS)
def test_agreeing_features(fusion):
    P = np.array([[[0.1, 0.2, 0.7], [0.1, 0.2, 0.7]]])
    fused, _ = fuse_batch(P, fusion)
    assert np.argmax(fused[0]) == 2


def test_conflicting_pair_splits_methods(backend):
    P = np.array([R.CONFLICT_PAIR], dtype=float)
    assert np.argmax(fuse_batch(P, "DRC")[0][0]) == 1
    assert np.argmax(fuse_batch(P, "FCPT-PCR")[0][0]) == 0
    assert fuse_batch(P, "FCPT-PCR")[0][0] == pytest.approx([0.5046, 0.0531, 0.4423], abs=5e-5)


def test_drc_total_conflict_is_recorded():
    P = np.array([[[1.0, 0.0], [0.0, 1.0]]])
    fused, conflict = fuse_batch(P, "DRC")
    assert conflict[0] and fused[0].tolist() == [0.5, 0.5]


def test_unknown_fusion():
    with pytest.raises(ValueError):
        fuse_batch(np.ones((1, 2, 2)) / 2, "Yager")


@pytest.mark.parametrize("fusion", ["DRC", "Murphy", "FCPT-PCR-mean"])
def test_feature_order_invariance(fusion, rng):
    for _ in range(20):
        P = rng.dirichlet(np.ones(3), size=(5, 4))
        perm = rng.permutation(4)
        a, _ = fuse_batch(P, fusion)
        b, _ = fuse_batch(P[:, perm, :], fusion)
        assert np.allclose(a, b, atol=1e-12)


def test_classify_matches_predict(rng):
    data = builtin_iris()
    model = fit(data)
    for fusion in FUSIONS:
        preds = predict(data.features[:10], model, fusion)
        assert [classify(x, model, fusion) for x in data.features[:10]] == preds.tolist()


def test_cross_validate_deterministic():
    data = builtin_iris()
    a = cross_validate(data, 5, 2, "FCPT-PCR", seed=7)
    b = cross_validate(data, 5, 2, "FCPT-PCR", seed=7)
    assert a == b
    assert all(0 <= v <= 1 for v in a.accuracies)
    assert a.mean == pytest.approx(np.mean(a.accuracies))


def test_cross_validate_validation():
    data = builtin_iris()
    with pytest.raises(ValueError):
        cross_validate(data, 1, 1)
    with pytest.raises(ValueError):
        cross_validate(data, 5, 0)
    small = data.subset(np.r_[0:3, 50:53, 100:103])
    with pytest.raises(ValueError, match="stratification"):
        cross_validate(small, 5, 1)


def test_training_accuracy_at_least_cv():
    data = builtin_iris()
    model = fit(data)
    reports = cross_validate_many(data, 5, 3, FUSIONS, seed=0)
    for fusion in FUSIONS:
        train_acc = (predict(data.features, model, fusion) == data.labels).mean()
        assert train_acc >= reports[fusion].mean - 0.02


def test_reports_to_csv():
    rep = cross_validate(builtin_iris(), 2, 2, "DRC", seed=0)
    lines = reports_to_csv([("iris", rep)]).splitlines()
    assert lines[0] == "dataset,method,k,repeats,mean_accuracy,std,conflicts"
    assert lines[1].startswith("iris,DRC,2,2,0.9")


def test_load_csv_iris_shape(tmp_path):
    data = builtin_iris()
    path = tmp_path / "iris.data"
    names = ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]
    path.write_text(
        "".join(",".join(f"{v}" for v in row) + f",{names[c]}\n" for row, c in zip(data.features, data.labels))
        + "\n"
    )
    loaded = load_csv(path)
    assert loaded.shape == (150, 4, 3)
    assert loaded.classes == tuple(names)
    assert np.array_equal(loaded.features, data.features)


def test_load_csv_whitespace_and_numeric_labels(tmp_path):
    path = tmp_path / "seeds.txt"
    path.write_text("1.0\t2.0  3\n1.5 2.5\t1\n2.0 3.0 2\n")
    loaded = load_csv(path, delimiter=None)
    assert loaded.shape == (3, 2, 3)
    assert loaded.classes == ("1", "2", "3")
    assert loaded.labels.tolist() == [2, 0, 1]


def test_load_csv_header_and_named_label(tmp_path):
    path = tmp_path / "h.csv"
    path.write_text("species,x,y\na,1,2\nb,3,4\n")
    loaded = load_csv(path, label="species")
    assert loaded.feature_names == ("x", "y")
    assert loaded.features.tolist() == [[1, 2], [3, 4]]
    loaded = load_csv(path, label=0)
    assert loaded.classes == ("a", "b")


def test_load_csv_errors(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ParseError):
        load_csv(empty)
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2,a\n3,x,b\n")
    with pytest.raises(ParseError, match="line 2, column 2"):
        load_csv(bad)
    ragged = tmp_path / "ragged.csv"
    ragged.write_text("1,2,a\n3,b\n")
    with pytest.raises(ParseError, match="line 2"):
        load_csv(ragged)
