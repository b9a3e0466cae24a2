"""Evidence combination rules."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .core import MassFunction, _same_frame, popcount, to_mass
from .errors import BeliefError, RedistributionError, TotalConflictError

CONFLICT_TOL = 1e-12


def _pairwise(m1, m2, op):
    _same_frame(m1, m2)
    acc: dict[int, float] = {}
    for g, a in m1.items():
        for h, b in m2.items():
            key = op(g, h)
            acc[key] = acc.get(key, 0.0) + a * b
    return acc


def ccr(m1, m2) -> MassFunction:
    """Conjunctive combination; the result may carry mass on the empty set."""
    m1, m2 = to_mass(m1), to_mass(m2)
    return MassFunction(m1.frame, _pairwise(m1, m2, int.__and__), strict=False)


def conflict_coefficient(m1, m2) -> float:
    m1, m2 = to_mass(m1), to_mass(m2)
    _same_frame(m1, m2)
    return math.fsum(a * b for g, a in m1.items() for h, b in m2.items() if not g & h)


def drc(m1, m2) -> MassFunction:
    """Dempster's rule: conjunctive combination renormalized off the empty set."""
    m1, m2 = to_mass(m1), to_mass(m2)
    acc = _pairwise(m1, m2, int.__and__)
    conflict = acc.pop(0, 0.0)
    # non-empty mass is the safer normalizer than 1 - K for subnormal inputs
    keep = math.fsum(acc.values())
    if keep <= CONFLICT_TOL:
        raise TotalConflictError(f"total conflict (K = {conflict!r}); Dempster's rule is undefined")
    return MassFunction(m1.frame, {f: v / keep for f, v in acc.items()}, strict=False)


def dcr(m1, m2) -> MassFunction:
    """Disjunctive combination: products land on the union of focal elements."""
    m1, m2 = to_mass(m1), to_mass(m2)
    return MassFunction(m1.frame, _pairwise(m1, m2, int.__or__), strict=False)


@dataclass(frozen=True)
class ReliabilityWeight:
    r: float = 1.0
    w: float = 1.0

    def __post_init__(self):
        for name in ("r", "w"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")

    @property
    def c(self) -> float:
        den = 1.0 + self.w - self.r
        if den == 0.0:
            raise BeliefError("1 + w - r is zero; discount factor undefined")
        return 1.0 / den


def _discount(m: MassFunction, rw: ReliabilityWeight) -> dict[int, float]:
    c = rw.c
    out = {f: c * v for f, v in m.items() if f}
    full = m.frame.full
    out[full] = out.get(full, 0.0) + c * (1.0 - rw.r)
    return out


def ecr(m1, m2, rw1: ReliabilityWeight = ReliabilityWeight(), rw2: ReliabilityWeight = ReliabilityWeight(),
        *, normalize: bool = True) -> MassFunction:
    """Reliability/weight discounted combination.

    Residual ignorance ``c * (1 - r)`` sits on the whole frame.  The raw
    combination does not sum to one in general (and carries conflict on the
    empty set), so by default the empty-set mass is dropped and the rest
    renormalized; with ``r = w = 1`` this is exactly Dempster's rule.
    """
    m1, m2 = to_mass(m1), to_mass(m2)
    _same_frame(m1, m2)
    d1, d2 = _discount(m1, rw1), _discount(m2, rw2)
    acc: dict[int, float] = {}
    for f, v in d1.items():
        acc[f] = acc.get(f, 0.0) + (1.0 - rw2.r) * v
    for f, v in d2.items():
        acc[f] = acc.get(f, 0.0) + (1.0 - rw1.r) * v
    for g, a in d1.items():
        for h, b in d2.items():
            acc[g & h] = acc.get(g & h, 0.0) + a * b
    if not normalize:
        return MassFunction(m1.frame, acc, strict=False)
    acc.pop(0, None)
    keep = math.fsum(acc.values())
    if keep <= CONFLICT_TOL:
        raise TotalConflictError("total conflict after discounting")
    return MassFunction(m1.frame, {f: v / keep for f, v in acc.items()}, strict=False)


def partial_drc(layer, m) -> MassFunction:
    """Ordered partial combination ``layer ⊕p m``.

    Every focal element ``H`` of ``m`` larger than the layer hands its mass
    to the layer's focal elements strictly inside ``H``, in proportion to
    their layer weights.  Focal elements at or below the layer keep their
    mass.  A larger ``H`` with no layer weight inside it cannot be split.
    """
    layer, m = to_mass(layer), to_mass(m)
    _same_frame(layer, m)
    weights = [(g, w) for g, w in layer.items() if w > 0]
    if not weights:
        raise RedistributionError("layer distribution carries no weight")
    level = min(popcount(g) for g, _ in weights)
    acc: dict[int, float] = {}
    for h, mh in m.items():
        if popcount(h) <= level:
            acc[h] = acc.get(h, 0.0) + mh
            continue
        targets = [(g, w) for g, w in weights if g != h and g & h == g]
        den = math.fsum(w for _, w in targets)
        if den <= 0.0:
            raise RedistributionError(
                f"no layer weight below {m.frame.name(h)} to redistribute mass {mh!r} onto"
            )
        for g, w in targets:
            acc[g] = acc.get(g, 0.0) + mh * w / den
    return MassFunction(m.frame, acc, strict=False)


def mean_mass(masses) -> MassFunction:
    masses = [to_mass(m) for m in masses]
    if not masses:
        raise ValueError("need at least one mass function")
    for other in masses[1:]:
        _same_frame(masses[0], other)
    acc: dict[int, float] = {}
    for m in masses:
        for f, v in m.items():
            acc[f] = acc.get(f, 0.0) + v
    return MassFunction(masses[0].frame, {f: v / len(masses) for f, v in acc.items()}, strict=False)


def murphy_combine(masses) -> MassFunction:
    """Average the inputs, then combine the average with itself ``len - 1`` times by DRC."""
    masses = list(masses)
    avg = mean_mass(masses)
    if len(masses) == 1:
        return to_mass(masses[0])
    return reduce(lambda acc, _: drc(acc, avg), range(len(masses) - 1), avg)


def layer_cardinality(layer: MassFunction) -> int:
    sizes = {popcount(f) for f in layer.focal}
    if len(sizes) != 1:
        raise ValueError(f"layer distribution spans cardinalities {sorted(sizes)}")
    return sizes.pop()
