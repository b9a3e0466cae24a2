"""Quality measures for probability transformations and the Bi-Criteria score."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .core import MassFunction, ProbabilityMassFunction, _same_frame, popcount, to_mass
from .transform import resolve

DEFAULT_ALPHAS = tuple(np.round(np.linspace(0.0, 1.0, 11), 10).tolist())


def normalized_entropy(p) -> float:
    probs = p.probs if isinstance(p, ProbabilityMassFunction) else np.asarray(p, float)
    n = probs.size
    if n < 2:
        raise ValueError("normalized entropy needs at least two elements")
    nz = probs[probs > 0]
    return float(-(nz * np.log(nz)).sum() / math.log(n))


def pic(p) -> float:
    """Probabilistic information content, ``1 - normalized entropy``."""
    return 1.0 - normalized_entropy(p)


def _jaccard(a: int, b: int) -> float:
    return popcount(a & b) / popcount(a | b)


def _quad(x: dict, y: dict) -> float:
    return math.fsum(u * v * _jaccard(f, g) for f, u in x.items() for g, v in y.items() if u and v)


def jousselme_distance(m1, m2) -> float:
    m1, m2 = to_mass(m1), to_mass(m2)
    _same_frame(m1, m2)
    diff: dict[int, float] = {}
    for f, v in m1.items():
        if f:
            diff[f] = diff.get(f, 0.0) + v
    for f, v in m2.items():
        if f:
            diff[f] = diff.get(f, 0.0) - v
    sq = 0.5 * _quad(diff, diff)
    return math.sqrt(max(sq, 0.0))


def _nonempty(m: MassFunction) -> dict:
    return {f: v for f, v in m.items() if f}


def correlation_coefficient(m1, m2) -> float:
    m1, m2 = to_mass(m1), to_mass(m2)
    _same_frame(m1, m2)
    a, b = _nonempty(m1), _nonempty(m2)
    den = math.sqrt(_quad(a, a) * _quad(b, b))
    if den == 0:
        raise ValueError("correlation undefined for a mass function with zero self-correlation")
    return _quad(a, b) / den


def _minmax(values, reverse=False):
    values = np.asarray(values, dtype=float)
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.zeros_like(values)
    return (hi - values) / (hi - lo) if reverse else (values - lo) / (hi - lo)


@dataclass
class MethodScore:
    method: str
    pmf: ProbabilityMassFunction
    pic: float
    entropy: float
    distance: float
    correlation: float
    pic_index: float = 0.0
    entropy_index: float = 0.0
    distance_index: float = 0.0
    c_joint: tuple = ()

    @property
    def c_joint_mean(self) -> float:
        return float(np.mean(self.c_joint)) if self.c_joint else float("nan")


@dataclass
class EvaluationReport:
    mass: MassFunction
    alphas: tuple
    scores: list = field(default_factory=list)

    def __getitem__(self, method: str) -> MethodScore:
        for s in self.scores:
            if s.method == method:
                return s
        raise KeyError(method)

    @property
    def methods(self) -> list[str]:
        return [s.method for s in self.scores]

    def best(self) -> str:
        """Method with the smallest mean joint score."""
        return min(self.scores, key=lambda s: s.c_joint_mean).method

    def to_csv(self, precision: int | None = 4) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        alpha_cols = [f"C_joint@{a:g}" for a in self.alphas]
        elements = [f"P({e})" for e in self.mass.frame.elements]
        writer.writerow(["method", *elements, "PIC", "d", "r", "PIC'", "d'", *alpha_cols, "mean"])
        fmt = (lambda v: repr(float(v))) if precision is None else (lambda v: f"{v:.{precision}f}")
        for s in self.scores:
            writer.writerow([
                s.method,
                *(fmt(p) for p in s.pmf.probs),
                fmt(s.pic), fmt(s.distance), fmt(s.correlation),
                fmt(s.pic_index), fmt(s.distance_index),
                *(fmt(c) for c in s.c_joint),
                fmt(s.c_joint_mean),
            ])
        return buf.getvalue()


def bi_criteria(scores, alphas=DEFAULT_ALPHAS, *, index: str = "pic"):
    """Fill the normalized indices and ``C_joint`` curves of ``scores`` in place.

    ``index="pic"`` scores ``alpha * d' + (1 - alpha) * PIC'``;
    ``index="entropy"`` uses the entropy index ``alpha * E_N' + (1 - alpha) * d'``.
    An index whose values all tie is zero for every method.
    """
    scores = list(scores)
    if len(scores) < 2:
        raise ValueError("Bi-Criteria needs at least two methods to normalize over")
    pic_idx = _minmax([s.pic for s in scores], reverse=True)
    ent_idx = _minmax([s.entropy for s in scores])
    d_idx = _minmax([s.distance for s in scores])
    alphas = tuple(float(a) for a in alphas)
    for s, pi, ei, di in zip(scores, pic_idx, ent_idx, d_idx):
        s.pic_index, s.entropy_index, s.distance_index = float(pi), float(ei), float(di)
        if index == "pic":
            s.c_joint = tuple(a * di + (1 - a) * pi for a in alphas)
        elif index == "entropy":
            s.c_joint = tuple(a * ei + (1 - a) * di for a in alphas)
        else:
            raise ValueError(f"unknown index {index!r}")
    return scores


def score(m, method: str, p: ProbabilityMassFunction | None = None) -> MethodScore:
    m = to_mass(m)
    p = p if p is not None else resolve(method)(m)
    lifted = p.as_mass()
    return MethodScore(
        method=method,
        pmf=p,
        pic=pic(p),
        entropy=normalized_entropy(p),
        distance=jousselme_distance(m, lifted),
        correlation=correlation_coefficient(m, lifted),
    )


def evaluate(m, methods, alphas=DEFAULT_ALPHAS, *, index: str = "pic") -> EvaluationReport:
    m = to_mass(m)
    scores = [score(m, name) for name in methods]
    if len(scores) >= 2:
        bi_criteria(scores, alphas, index=index)
    return EvaluationReport(m, tuple(float(a) for a in alphas), scores)
