from importlib import resources

import pytest

from beliefevo import reproduce as rep


@pytest.mark.parametrize("target", rep.OFFLINE_TARGETS)
def test_matches_golden(target):
    golden = resources.files("beliefevo").joinpath("golden", f"{target}.csv").read_text()
    assert rep.build(target).render("csv", 4) == golden


def test_two_runs_byte_identical(tmp_path):
    a = rep.reproduce(rep.OFFLINE_TARGETS, tmp_path / "a")
    b = rep.reproduce(rep.OFFLINE_TARGETS, tmp_path / "b")
    for x, y in zip(a, b):
        assert x.read_bytes() == y.read_bytes()


def test_table8_needs_dataset():
    with pytest.raises(rep.MissingDatasetError):
        rep.build("table8")
    with pytest.raises(rep.MissingDatasetError):
        rep.build("table8", iris="builtin")


def test_table8_with_builtin_iris_and_local_seeds(tmp_path):
    # a tiny stand-in seeds file keeps this fast
    rows = [f"{i % 7}.{i} {i % 3}.5 {(i * 7) % 11}.25 {c}" for c in (1, 2, 3) for i in range(12)]
    path = tmp_path / "seeds.txt"
    path.write_text("\n".join(rows) + "\n")
    table = rep.table8(iris="builtin", seeds=str(path), repeats=2)
    assert [r[0] for r in table.rows] == ["iris"] * 3 + ["seeds"] * 3


def test_json_output(tmp_path):
    (path,) = rep.reproduce(["table7"], tmp_path, fmt="json")
    assert path.suffix == ".json" and path.read_text().lstrip().startswith(("{", "["))


def test_unknown_target():
    with pytest.raises(ValueError):
        rep.build("figure1")
