"""Gaussian per-feature PMFs fused into a class decision, with repeated k-fold CV."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from sklearn.model_selection import StratifiedKFold

from . import kernels
from .core import Frame, ProbabilityMassFunction
from .errors import ParseError

FUSIONS = ("DRC", "Murphy", "FCPT-PCR", "FCPT-PCR-mean")
SIGMA_FLOOR = 1e-6
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Dataset:
    features: np.ndarray  # (samples, t)
    labels: np.ndarray  # class index per sample
    classes: tuple
    feature_names: tuple = ()

    def __post_init__(self):
        if self.features.ndim != 2 or self.features.shape[0] != self.labels.shape[0]:
            raise ValueError("features must be (samples, t) with one label per sample")
        if not np.isfinite(self.features).all():
            raise ValueError("features contain missing or non-finite values")
        if len(self.classes) < 2:
            raise ValueError("need at least two classes")

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.features.shape[0], self.features.shape[1], len(self.classes)

    def subset(self, idx) -> Dataset:
        return Dataset(self.features[idx], self.labels[idx], self.classes, self.feature_names)


def _is_number(text):
    try:
        float(text)
        return True
    except ValueError:
        return False


def load_csv(path, label=-1, *, delimiter: str | None = ",", header: bool | None = None) -> Dataset:
    """Read a numeric table with one label column.

    ``label`` is a column index (negative counts from the end) or a header
    name.  ``delimiter=None`` splits on runs of whitespace, which reads the
    raw UCI files directly.  ``header=None`` detects a header row.
    """
    text = Path(path).read_text(encoding="utf-8")
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        cells = line.split() if delimiter is None else [c.strip() for c in line.split(delimiter)]
        rows.append((lineno, cells))
    if not rows:
        raise ParseError(f"{path}: line 1, column 1: empty file")
    names = None
    if header is None:
        header = _looks_like_header(rows, label)
    if header:
        names = rows[0][1]
        rows = rows[1:]
        if not rows:
            raise ParseError(f"{path}: no data rows after header")
    width = len(rows[0][1])
    col = _col(label, rows[0][1], names)
    feats, raw_labels = [], []
    for lineno, cells in rows:
        if len(cells) != width:
            raise ParseError(f"{path}: line {lineno}: expected {width} columns, found {len(cells)}")
        row = []
        for j, cell in enumerate(cells):
            if j == col:
                continue
            try:
                row.append(float(cell))
            except ValueError:
                raise ParseError(f"{path}: line {lineno}, column {j + 1}: non-numeric feature {cell!r}") from None
        feats.append(row)
        raw_labels.append(cells[col])
    classes = tuple(sorted(set(raw_labels), key=lambda c: (not _is_number(c), float(c) if _is_number(c) else 0.0, c)))
    index = {c: i for i, c in enumerate(classes)}
    feature_names = tuple(n for j, n in enumerate(names) if j != col) if names else ()
    return Dataset(np.array(feats, dtype=float), np.array([index[c] for c in raw_labels]), classes, feature_names)


def _looks_like_header(rows, label) -> bool:
    if isinstance(label, str) and not label.lstrip("-").isdigit():
        return True
    def words(cells):
        return sum(not _is_number(c) for c in cells)
    first = words(rows[0][1])
    if len(rows) == 1:
        return first > 1
    return first > words(rows[1][1])


def _col(label, cells, names):
    if isinstance(label, str) and not label.lstrip("-").isdigit():
        if names is None:
            raise ParseError(f"label column {label!r} given by name but the file has no header")
        if label not in names:
            raise ParseError(f"label column {label!r} not in header {names}")
        return names.index(label)
    idx = int(label)
    width = len(cells)
    if not -width <= idx < width:
        raise ParseError(f"label column {idx} out of range for {width} columns")
    return idx % width


@dataclass(frozen=True)
class GaussianFeatureModel:
    mean: np.ndarray  # (classes, t)
    std: np.ndarray  # (classes, t)
    classes: tuple

    @property
    def frame(self) -> Frame:
        labels = tuple(str(c) for c in self.classes)
        try:
            return Frame(labels)
        except Exception:
            return Frame.indexed(len(self.classes), "c")


def fit(train: Dataset) -> GaussianFeatureModel:
    """Per-class, per-feature mean and unbiased standard deviation.

    Standard deviations are clamped below at ``SIGMA_FLOOR`` times the
    feature's standard deviation over the whole training fold.
    """
    X, y = train.features, train.labels
    n_classes = len(train.classes)
    counts = np.bincount(y, minlength=n_classes)
    if (counts < 2).any():
        missing = [train.classes[c] for c in np.flatnonzero(counts < 2)]
        raise ValueError(f"classes {missing} have fewer than two training samples")
    mean = np.stack([X[y == c].mean(axis=0) for c in range(n_classes)])
    std = np.stack([X[y == c].std(axis=0, ddof=1) for c in range(n_classes)])
    spread = X.std(axis=0, ddof=1) if len(X) > 1 else np.zeros(X.shape[1])
    floor = np.maximum(SIGMA_FLOOR * spread, np.finfo(float).tiny)
    return GaussianFeatureModel(mean, np.maximum(std, floor), train.classes)


def feature_pmfs(X, model: GaussianFeatureModel):
    """Class PMFs for every sample and feature: shape ``(samples, t, classes)``.

    Returns ``(pmfs, fallback)`` where ``fallback`` flags (sample, feature)
    pairs whose densities all underflowed and were replaced by uniform.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    z = (X[:, None, :] - model.mean[None]) / model.std[None]
    dens = np.exp(-0.5 * z * z) / (model.std[None] * _SQRT_2PI)  # (B, C, t)
    dens = np.transpose(dens, (0, 2, 1))
    total = dens.sum(axis=2, keepdims=True)
    fallback = total[..., 0] <= 0
    n_classes = dens.shape[2]
    pmfs = np.divide(dens, total, out=np.full_like(dens, 1.0 / n_classes), where=total > 0)
    return pmfs, fallback


def feature_pmf(x: float, model: GaussianFeatureModel, j: int) -> ProbabilityMassFunction:
    row = np.zeros((1, model.mean.shape[1]))
    row[0, j] = x
    pmfs, _ = feature_pmfs(row, model)
    return ProbabilityMassFunction(model.frame, pmfs[0, j])


def fuse_batch(P: np.ndarray, fusion: str):
    """Fuse ``(samples, t, classes)`` feature PMFs into ``(samples, classes)``.

    Returns ``(fused, conflict)``; ``conflict`` marks samples where DRC met
    total conflict and the uniform distribution was used instead.
    """
    batch, t, n_classes = P.shape
    conflict = np.zeros(batch, dtype=bool)
    key = fusion.strip().upper()
    if t == 1:
        return P[:, 0, :].copy(), conflict
    if key == "DRC":
        # left to right; the order is irrelevant for an associative rule
        cur = P[:, 0, :].copy()
        for j in range(1, t):
            cur = cur * P[:, j, :]
            total = cur.sum(axis=1, keepdims=True)
            bad = total[:, 0] <= 0
            conflict |= bad
            cur = np.divide(cur, total, out=np.full_like(cur, 1.0 / n_classes), where=total > 0)
        return cur, conflict
    if key == "MURPHY":
        mean = P.mean(axis=1)
        cur = mean.copy()
        for _ in range(t - 1):
            cur = cur * mean
            total = cur.sum(axis=1, keepdims=True)
            conflict |= total[:, 0] <= 0
            cur = np.divide(cur, total, out=np.full_like(cur, 1.0 / n_classes), where=total > 0)
        return cur, conflict
    if key == "FCPT-PCR":
        # pairwise, left to right over features
        cur = np.ascontiguousarray(P[:, 0, :])
        for j in range(1, t):
            cur = kernels.pcr_batch(cur, np.ascontiguousarray(P[:, j, :]))
        return cur, conflict
    if key == "FCPT-PCR-MEAN":
        mean = np.ascontiguousarray(P.mean(axis=1))
        cur = mean
        for _ in range(t - 1):
            cur = kernels.pcr_batch(cur, mean)
        return cur, conflict
    raise ValueError(f"unknown fusion {fusion!r}; choose from {FUSIONS}")


def classify(sample, model: GaussianFeatureModel, fusion: str = "FCPT-PCR") -> int:
    """Class index of the fused PMF's maximum (lowest index wins ties)."""
    pmfs, _ = feature_pmfs(np.asarray(sample, dtype=float)[None, :], model)
    fused, _ = fuse_batch(pmfs, fusion)
    return int(np.argmax(fused[0]))


def predict(X, model: GaussianFeatureModel, fusion: str = "FCPT-PCR") -> np.ndarray:
    pmfs, _ = feature_pmfs(X, model)
    fused, _ = fuse_batch(pmfs, fusion)
    return np.argmax(fused, axis=1)


@dataclass(frozen=True)
class CrossValReport:
    method: str
    k: int
    repeats: int
    accuracies: tuple = field(repr=False)
    conflicts: int = 0

    @property
    def mean(self) -> float:
        return float(np.mean(self.accuracies))

    @property
    def std(self) -> float:
        return float(np.std(self.accuracies, ddof=1)) if len(self.accuracies) > 1 else 0.0


def repeat_seeds(seed: int, repeats: int) -> list[int]:
    """Independent per-repeat seeds derived from one master seed."""
    children = np.random.SeedSequence(seed).spawn(repeats)
    return [int(c.generate_state(1, dtype=np.uint32)[0]) for c in children]


def cross_validate_many(dataset: Dataset, k: int, repeats: int, fusions=FUSIONS[:3], seed: int = 0):
    """Repeated stratified k-fold accuracy of several fusions on shared folds."""
    n_samples = dataset.labels.shape[0]
    if not 2 <= k <= n_samples:
        raise ValueError(f"k must lie in 2..{n_samples}, got {k}")
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    smallest = np.bincount(dataset.labels).min()
    if smallest < k:
        raise ValueError(f"smallest class has {smallest} samples, too few for {k}-fold stratification")
    fusions = list(fusions)
    correct = {f: np.zeros(repeats) for f in fusions}
    conflicts = {f: 0 for f in fusions}
    for r, s in enumerate(repeat_seeds(seed, repeats)):
        folds = StratifiedKFold(n_splits=k, shuffle=True, random_state=s)
        for train_idx, test_idx in folds.split(dataset.features, dataset.labels):
            model = fit(dataset.subset(train_idx))
            pmfs, _ = feature_pmfs(dataset.features[test_idx], model)
            truth = dataset.labels[test_idx]
            for f in fusions:
                fused, bad = fuse_batch(pmfs, f)
                correct[f][r] += int((np.argmax(fused, axis=1) == truth).sum())
                conflicts[f] += int(bad.sum())
    return {
        f: CrossValReport(f, k, repeats, tuple((correct[f] / n_samples).tolist()), conflicts[f])
        for f in fusions
    }


def cross_validate(dataset: Dataset, k: int, repeats: int, fusion: str = "FCPT-PCR", seed: int = 0) -> CrossValReport:
    return cross_validate_many(dataset, k, repeats, [fusion], seed)[fusion]


def reports_to_csv(rows, precision: int | None = 4) -> str:
    """``rows`` is an iterable of ``(dataset_name, CrossValReport)``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dataset", "method", "k", "repeats", "mean_accuracy", "std", "conflicts"])
    fmt = (lambda v: repr(float(v))) if precision is None else (lambda v: f"{v:.{precision}f}")
    for name, rep in rows:
        writer.writerow([name, rep.method, rep.k, rep.repeats, fmt(rep.mean), fmt(rep.std), rep.conflicts])
    return buf.getvalue()


def builtin_iris() -> Dataset:
    """The iris table shipped with scikit-learn (no network access needed)."""
    from sklearn.datasets import load_iris

    data = load_iris()
    return Dataset(
        np.asarray(data.data, dtype=float),
        np.asarray(data.target, dtype=int),
        tuple(str(c) for c in data.target_names),
        tuple(data.feature_names),
    )
