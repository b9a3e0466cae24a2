"""Regenerate the worked tables and figure data as CSV/JSON bundles."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from . import reference as R
from .classifier import Dataset, builtin_iris, cross_validate_many, load_csv
from .evaluation import DEFAULT_ALPHAS, correlation_coefficient, evaluate, pic
from .fusion import ablation_pair, fcpt_pcr_multi, iterate_self_fusion, murphy_pmf, three_way
from .core import ProbabilityMassFunction
from .tables import Table, atomic_write
from .transform import transform

TARGETS = ("table2", "table3", "table4", "table5", "fig7", "fig8", "fig9", "table6", "table7", "table8")
OFFLINE_TARGETS = TARGETS[:-1]

DATASET_HELP = (
    "table8 needs the iris and seeds tables.  Download them by hand from the UCI repository "
    "(https://archive.ics.uci.edu/dataset/53/iris and https://archive.ics.uci.edu/dataset/236/seeds), "
    "then pass --iris iris.data --seeds seeds_dataset.txt.  '--iris builtin' uses the copy bundled "
    "with scikit-learn.  Nothing is downloaded automatically."
)


class MissingDatasetError(FileNotFoundError):
    pass


def table2() -> Table:
    m = R.example_small()
    t = Table("table2", ["method", "P(A)", "P(B)", "P(C)", "result", "PIC"])
    methods = ["CuzzP", "PnPl", "BetP", "DSmP_0.1", f"DSmP_{R.TABLE2_DSMP_EPS:g}", "PraPl", "FCP"]
    for name in methods:
        p = transform(m, name)
        t.add(name, *map(float, p.probs), m.frame.elements[p.argmax()], pic(p))
    return t


def table3() -> Table:
    report = evaluate(R.example_ben(), R.TABLE3_METHODS)
    t = Table("table3", ["method", "P(A)", "P(B)", "P(C)", "P(D)", "PIC", "PIC'", "d", "d'"])
    for s in report.scores:
        t.add(s.method, *map(float, s.pmf.probs), s.pic, s.pic_index, s.distance, s.distance_index)
    return t


def _sweep(name, measure) -> Table:
    t = Table(name, ["method", *(str(k) for k in R.SWEEP_SIZES)])
    masses = [R.sweep_mass(k) for k in R.SWEEP_SIZES]
    for method in R.SWEEP_METHODS:
        t.add(method, *(float(measure(m, transform(m, method))) for m in masses))
    return t


def table4() -> Table:
    """Correlation between each sweep BPA and its transformed PMF."""
    return _sweep("table4", lambda m, p: correlation_coefficient(m, p.as_mass()))


def table5() -> Table:
    """PIC of each transformed PMF along the sweep."""
    return _sweep("table5", lambda m, p: pic(p))


def fig7() -> Table:
    report = evaluate(R.example_ben(), R.TABLE3_METHODS, DEFAULT_ALPHAS)
    t = Table("fig7", ["alpha", *report.methods])
    for i, a in enumerate(report.alphas):
        t.add(float(a), *(s.c_joint[i] for s in report.scores))
    t.add("mean", *(s.c_joint_mean for s in report.scores))
    return t


def _trajectories(name, rule) -> Table:
    steps = R.TRAJECTORY_STEPS
    t = Table(name, ["p", *(str(i) for i in range(steps + 1))])
    for p in R.TRAJECTORY_P_GRID:
        traj = iterate_self_fusion(three_way(p), steps, rule)
        t.add(float(p), *map(float, traj.column(0)))
    return t


def fig8() -> Table:
    """p(A) over 15 DRC self-fusions for each starting p."""
    return _trajectories("fig8", "DRC")


def fig9() -> Table:
    """p(A) over 15 FCPT-PCR self-fusions for each starting p."""
    return _trajectories("fig9", "FCPT-PCR")


def table6() -> Table:
    pairs = {"P1": R.CONFLICT_PAIR, "P2": R.SAME_PAIR}
    results = {
        (key, method): ablation_pair(R.pmf3(a), R.pmf3(b), method)
        for key, (a, b) in pairs.items()
        for method in R.ABLATION_METHODS
    }
    t = Table("table6", ["row", *R.ABLATION_METHODS])
    for key in pairs:
        for j, e in enumerate(R.ABC.elements):
            t.add(f"{key}({e})", *(float(results[key, mth].probs[j]) for mth in R.ABLATION_METHODS))
    return t


def table7() -> Table:
    frame = R.ABCD
    inputs = [ProbabilityMassFunction(frame, row, strict=False) for row in R.TABLE7_INPUTS]
    t = Table("table7", ["source", *frame.elements, "result"])
    for i, p in enumerate(inputs, 1):
        t.add(f"P{i}", *map(float, p.probs), frame.elements[int(np.argmax(p.probs))])
    for name, fused in (("Murphy", murphy_pmf(inputs)), ("FCPT-PCR", fcpt_pcr_multi(inputs))):
        t.add(name, *map(float, fused.probs), frame.elements[fused.argmax()])
    return t


def resolve_dataset(spec, name) -> Dataset:
    if spec is None:
        raise MissingDatasetError(f"no {name} dataset given.  {DATASET_HELP}")
    if name == "iris" and str(spec) == "builtin":
        return builtin_iris()
    path = Path(spec)
    if not path.is_file():
        raise MissingDatasetError(f"{name} dataset {path} not found.  {DATASET_HELP}")
    # UCI iris is comma separated, UCI seeds is whitespace separated
    text = path.read_text(encoding="utf-8")
    delimiter = "," if "," in text.splitlines()[0] else None
    return load_csv(path, -1, delimiter=delimiter)


def table8(iris=None, seeds=None, repeats: int = 1000, seed: int = 0, ks=R.TABLE8_KS) -> Table:
    datasets = {"iris": resolve_dataset(iris, "iris"), "seeds": resolve_dataset(seeds, "seeds")}
    methods = ("Murphy", "DRC", "FCPT-PCR")
    t = Table("table8", ["dataset", "method", *(f"{k}-fold" for k in ks)])
    for name, data in datasets.items():
        grid = {k: cross_validate_many(data, k, repeats, methods, seed) for k in ks}
        for method in methods:
            t.add(name, method, *(100.0 * grid[k][method].mean for k in ks))
    return t


BUILDERS = {
    "table2": table2, "table3": table3, "table4": table4, "table5": table5,
    "fig7": fig7, "fig8": fig8, "fig9": fig9, "table6": table6, "table7": table7,
}


def build(target: str, **dataset_opts) -> Table:
    if target == "table8":
        return table8(**dataset_opts)
    if target not in BUILDERS:
        raise ValueError(f"unknown target {target!r}; choose from {TARGETS}")
    return BUILDERS[target]()


def reproduce(targets, outdir, fmt: str = "csv", precision: int | None = 4, **dataset_opts) -> list[Path]:
    """Build every target first, then write each file atomically."""
    targets = list(targets)
    rendered = [(t, build(t, **dataset_opts).render(fmt, precision)) for t in targets]
    outdir = Path(outdir)
    written = []
    for target, text in rendered:
        path = outdir / f"{target}.{fmt}"
        atomic_write(path, text)
        written.append(path)
    return written
