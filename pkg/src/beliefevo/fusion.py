"""Probability fusion: FCPT-PCR, multi-source averaging and trajectories."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import kernels
from .combination import dcr, drc
from .core import Frame, ProbabilityMassFunction, _same_frame
from .errors import TotalConflictError
from .transform import resolve


def _probs(p):
    return p.probs if isinstance(p, ProbabilityMassFunction) else np.asarray(p, dtype=float)


def _wrap(frame, values):
    values = np.where(np.abs(values) < 1e-15, 0.0, values)
    return ProbabilityMassFunction(frame, values)


def fcpt_pcr_pair(p1: ProbabilityMassFunction, p2: ProbabilityMassFunction) -> ProbabilityMassFunction:
    """Disjunctive combination of two PMFs followed by the FCP transformation."""
    _same_frame(p1, p2)
    out = kernels.pcr_batch(p1.probs[None, :], p2.probs[None, :])[0]
    return _wrap(p1.frame, out)


def drc_pair(p1: ProbabilityMassFunction, p2: ProbabilityMassFunction) -> ProbabilityMassFunction:
    """Dempster's rule restricted to bayesian inputs: normalized elementwise product."""
    _same_frame(p1, p2)
    prod = p1.probs * p2.probs
    total = prod.sum()
    if total <= 0:
        raise TotalConflictError("the two PMFs share no support")
    return _wrap(p1.frame, prod / total)


def ablation_pair(p1, p2, tag: str) -> ProbabilityMassFunction:
    """Disjunctive combination followed by the transformation named by ``tag``."""
    _same_frame(p1, p2)
    if tag.strip().lower() in ("fcp", "fcpt"):
        return fcpt_pcr_pair(p1, p2)
    func = resolve(tag)
    return func(dcr(p1.as_mass(), p2.as_mass()))


def mean_pmf(pmfs, *, normalize: bool = False) -> ProbabilityMassFunction:
    pmfs = list(pmfs)
    if not pmfs:
        raise ValueError("need at least one PMF")
    for other in pmfs[1:]:
        _same_frame(pmfs[0], other)
    avg = np.mean([_probs(p) for p in pmfs], axis=0)
    if normalize:
        avg = avg / avg.sum()
    return ProbabilityMassFunction(pmfs[0].frame, avg, strict=normalize)


def fcpt_pcr_multi(pmfs) -> ProbabilityMassFunction:
    """Multi-source fusion: fuse the running result with the fixed mean ``len - 1`` times."""
    pmfs = list(pmfs)
    if len(pmfs) == 1:
        return pmfs[0]
    base = mean_pmf(pmfs)
    cur = base.probs[None, :]
    fixed = cur.copy()
    for _ in range(len(pmfs) - 1):
        cur = kernels.pcr_batch(cur, fixed)
    # no-op for normalized inputs; rescales the raw mean of unnormalized rows
    return _wrap(base.frame, cur[0] / cur[0].sum())


def murphy_pmf(pmfs) -> ProbabilityMassFunction:
    """Murphy's rule for PMFs: mean combined with itself ``len - 1`` times by DRC."""
    pmfs = list(pmfs)
    if len(pmfs) == 1:
        return pmfs[0]
    base = mean_pmf(pmfs)
    cur = base.probs
    for _ in range(len(pmfs) - 1):
        cur = cur * base.probs
        total = cur.sum()
        if total <= 0:
            raise TotalConflictError("total conflict in Murphy combination")
        cur = cur / total
    return _wrap(base.frame, cur)


def murphy_pmf_general(pmfs) -> ProbabilityMassFunction:
    """Same as :func:`murphy_pmf` but through the general sparse DRC."""
    pmfs = list(pmfs)
    if len(pmfs) == 1:
        return pmfs[0]
    base = mean_pmf(pmfs)
    avg = base.as_mass()
    cur = avg
    for _ in range(len(pmfs) - 1):
        cur = drc(cur, avg)
    return _wrap(base.frame, np.array([cur[s] for s in base.frame.singletons()]))


@dataclass(frozen=True)
class FusionTrajectory:
    initial: ProbabilityMassFunction
    steps: tuple
    rule: str = "FCPT-PCR"

    @property
    def count(self) -> int:
        return len(self.steps) - 1

    @property
    def final(self) -> ProbabilityMassFunction:
        return self.steps[-1]

    def column(self, element: int = 0) -> np.ndarray:
        return np.array([p.probs[element] for p in self.steps])

    def to_csv(self, precision: int | None = 4) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["step", *(f"p({e})" for e in self.initial.frame.elements)])
        fmt = (lambda v: repr(float(v))) if precision is None else (lambda v: f"{v:.{precision}f}")
        for i, p in enumerate(self.steps):
            writer.writerow([i, *(fmt(v) for v in p.probs)])
        return buf.getvalue()


def iterate_self_fusion(p: ProbabilityMassFunction, steps: int, rule: str = "FCPT-PCR") -> FusionTrajectory:
    """Repeatedly fuse the running result with the original ``p``."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    key = rule.strip().upper()
    if key == "FCPT-PCR":
        fuse = fcpt_pcr_pair
    elif key == "DRC":
        fuse = drc_pair
    else:
        raise ValueError(f"unknown fusion rule {rule!r}")
    seq = [p]
    cur = p
    for _ in range(steps):
        cur = fuse(cur, p)
        seq.append(cur)
    return FusionTrajectory(p, tuple(seq), key)


def three_way(p: float, frame: Frame | None = None) -> ProbabilityMassFunction:
    """``{p, (1 - p) / 2, (1 - p) / 2}`` over a three-element frame."""
    rest = (1.0 - p) / 2.0
    return ProbabilityMassFunction(frame or Frame.letters(3), [p, rest, rest])
