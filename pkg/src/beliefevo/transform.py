"""Probability transformations from mass functions to PMFs."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb
from typing import Callable

import numpy as np

from . import kernels
from .combination import partial_drc
from .core import (
    Frame,
    MassFunction,
    ProbabilityMassFunction,
    classify_special,
    fc_vector,
    popcount,
    require_normal,
    singleton_pl,
    to_mass,
)
from .errors import InvalidMassError

TOL = 1e-9


@dataclass(frozen=True)
class LayerDistribution:
    """Weights over every subset of one cardinality, summing to one."""

    cardinality: int
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        total = math.fsum(self.weights.values())
        if any(w < 0 for w in self.weights.values()):
            raise InvalidMassError("layer weights must be non-negative")
        if abs(total - 1.0) > TOL:
            raise InvalidMassError(f"layer weights sum to {total!r}, not 1")
        if any(popcount(b) != self.cardinality for b in self.weights):
            raise InvalidMassError(f"layer weights must all sit on subsets of size {self.cardinality}")

    def as_mass(self, frame: Frame) -> MassFunction:
        return MassFunction(frame, self.weights, strict=False)


@dataclass(frozen=True)
class TransformResult:
    pmf: ProbabilityMassFunction
    method: str
    trace: tuple = ()


def _pmf(frame, values):
    values = np.asarray(values, dtype=float)
    values = np.where(np.abs(values) < 1e-15, 0.0, values)
    return ProbabilityMassFunction(frame, values)


def betp(m) -> ProbabilityMassFunction:
    """Pignistic transformation; the only one that accepts subnormal input."""
    m = to_mass(m)
    empty = m.empty_mass
    if empty >= 1.0 - TOL:
        raise InvalidMassError("pignistic transformation undefined when all mass is on the empty set")
    out = np.zeros(m.frame.n)
    for f, v in m.items():
        if not f:
            continue
        share = v / popcount(f)
        for i in range(m.frame.n):
            if f >> i & 1:
                out[i] += share
    return _pmf(m.frame, out / (1.0 - empty))


def pnpl(m) -> ProbabilityMassFunction:
    """Normalized plausibility of singletons."""
    m = to_mass(m)
    require_normal(m, "pnpl")
    plaus = singleton_pl(m)
    total = plaus.sum()
    if total <= 0:
        raise InvalidMassError("all singleton plausibilities are zero")
    return _pmf(m.frame, plaus / total)


def prapl(m) -> ProbabilityMassFunction:
    m = to_mass(m)
    require_normal(m, "prapl")
    belief = np.array([m[s] for s in m.frame.singletons()])
    plaus = singleton_pl(m)
    total = plaus.sum()
    if total <= 0:
        raise InvalidMassError("all singleton plausibilities are zero")
    return _pmf(m.frame, belief + plaus * (1.0 - belief.sum()) / total)


def dsmp(m, eps: float = 0.001) -> ProbabilityMassFunction:
    """Proportional redistribution on singleton masses, tempered by ``eps``.

    A multi-element focal element whose members all have zero singleton mass
    is split evenly when ``eps == 0`` (the ``eps -> 0`` limit).
    """
    m = to_mass(m)
    require_normal(m, "dsmp")
    if eps < 0:
        raise ValueError(f"eps must be non-negative, got {eps!r}")
    n = m.frame.n
    single = np.array([m[s] for s in m.frame.singletons()])
    out = single.copy()
    for f, v in m.items():
        size = popcount(f)
        if size < 2:
            continue
        members = [i for i in range(n) if f >> i & 1]
        den = single[members].sum() + size * eps
        if den > 0:
            for i in members:
                out[i] += v * (single[i] + eps) / den
        else:
            for i in members:
                out[i] += v / size
    return _pmf(m.frame, out / out.sum())


def cuzzp(m) -> ProbabilityMassFunction:
    m = to_mass(m)
    require_normal(m, "cuzzp")
    single = np.array([m[s] for s in m.frame.singletons()])
    excess = singleton_pl(m) - single
    multi = math.fsum(v for f, v in m.items() if popcount(f) > 1)
    den = excess.sum()
    if den <= 0:
        # no multi-element focal mass at all: already bayesian
        return _pmf(m.frame, single)
    return _pmf(m.frame, single + multi * excess / den)


def fcpt(m, *, trace: bool = False) -> TransformResult:
    """Full-causality transformation.

    Walking the network top-down, each node of the current layer hands its
    mass to its children in proportion to their full-causality values, which
    are recomputed from the evolving mass before every layer.
    """
    m = to_mass(m)
    require_normal(m, "fcpt")
    frame, n = m.frame, m.frame.n
    vec = m.to_vector()
    snapshots = [m] if trace else []
    for k in range(n, 1, -1):
        vec = kernels.fcpt_step(vec, n, k)
        if trace:
            snapshots.append(MassFunction.from_vector(frame, vec, strict=False))
    return TransformResult(_pmf(frame, vec[frame.singletons()]), "FCP", tuple(snapshots))


def fcp(m) -> ProbabilityMassFunction:
    return fcpt(m).pmf


LayerProvider = Callable[[int, MassFunction], LayerDistribution]


def uniform_layers(step: int, current: MassFunction) -> LayerDistribution:
    """Even weights over every subset of size ``n - step``."""
    n = current.frame.n
    k = n - step
    nodes = [b for b in range(1, 1 << n) if popcount(b) == k]
    w = 1.0 / comb(n, k)
    return LayerDistribution(k, {b: w for b in nodes})


def fc_layers(step: int, current: MassFunction) -> LayerDistribution:
    """Full-causality weights of the size ``n - step`` subsets of the current mass."""
    n = current.frame.n
    k = n - step
    values = fc_vector(current)
    nodes = [b for b in range(1, 1 << n) if popcount(b) == k]
    total = math.fsum(values[b] for b in nodes)
    if total <= 0:
        return uniform_layers(step, current)
    return LayerDistribution(k, {b: values[b] / total for b in nodes if values[b] > 0})


def gptm(m, provider: LayerProvider = uniform_layers, *, method: str = "GPTM") -> TransformResult:
    """Layered transformation as ``n - 1`` ordered partial combinations."""
    current = to_mass(m)
    require_normal(current, "gptm")
    frame = current.frame
    snapshots = [current]
    for step in range(1, frame.n):
        layer = provider(step, current)
        current = partial_drc(layer.as_mass(frame), current)
        snapshots.append(current)
    probs = [current[s] for s in frame.singletons()]
    return TransformResult(_pmf(frame, probs), method, tuple(snapshots))


@dataclass(frozen=True)
class ConsistencyReport:
    p_consistent: bool
    ulb_consistent: bool


def consistency_checks(m, p: ProbabilityMassFunction, tol: float = TOL) -> ConsistencyReport:
    m = to_mass(m)
    if m.frame != p.frame:
        return ConsistencyReport(False, False)
    single = np.array([m[s] for s in m.frame.singletons()])
    p_ok = True
    if m.is_normal and classify_special(m) == "bayesian":
        p_ok = bool(np.all(np.abs(single - p.probs) <= tol))
    ulb_ok = bool(np.all(single - tol <= p.probs) and np.all(p.probs <= singleton_pl(m) + tol))
    return ConsistencyReport(p_ok, ulb_ok)


METHODS = ("BetP", "PnPl", "PraPl", "CuzzP", "DSmP", "FCP")
_SIMPLE = {
    "betp": betp,
    "pnpl": pnpl,
    "prapl": prapl,
    "cuzzp": cuzzp,
    "fcp": fcp,
    "fcpt": fcp,
}


def resolve(tag: str) -> Callable[[MassFunction], ProbabilityMassFunction]:
    """Transformation for a tag such as ``"BetP"`` or ``"DSmP_0.001"``."""
    key = tag.strip()
    low = key.lower()
    if low in _SIMPLE:
        return _SIMPLE[low]
    if low.startswith("dsmp"):
        rest = key[4:].lstrip("_") or "0.001"
        try:
            eps = float(rest)
        except ValueError:
            raise ValueError(f"bad DSmP parameter in {tag!r}") from None
        return lambda m: dsmp(m, eps)
    raise ValueError(f"unknown transformation {tag!r}; choose from BetP, PnPl, PraPl, CuzzP, DSmP_<eps>, FCP")


def transform(m, tag: str) -> ProbabilityMassFunction:
    return resolve(tag)(m)
