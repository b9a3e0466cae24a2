"""Frames, mass functions and the classical belief functions.

Subsets of a frame are plain ``int`` bitmasks: bit ``i`` set means element
``i`` of the frame is in the subset.  ``0`` is the empty set and
``frame.full`` is the whole frame.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import kernels
from .errors import (
    FrameError,
    FrameMismatchError,
    InvalidMassError,
    InversionError,
    UnsupportedDimensionError,
)

MAX_ELEMENTS = 24
NORM_TOL = 1e-9
_RESERVED = set("+:,#_ \t\r\n")


@dataclass(frozen=True)
class Frame:
    """An ordered frame of discernment."""

    elements: tuple[str, ...]

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        object.__setattr__(self, "elements", elements)
        if not 1 <= len(elements) <= MAX_ELEMENTS:
            raise FrameError(f"frame size must be within 1..{MAX_ELEMENTS}, got {len(elements)}")
        if len(set(elements)) != len(elements):
            raise FrameError(f"duplicate element labels in {elements}")
        for e in elements:
            if not e or _RESERVED & set(e):
                raise FrameError(f"invalid element label {e!r}")
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(elements)})

    @classmethod
    def letters(cls, n: int) -> Frame:
        if not 1 <= n <= 26:
            raise FrameError(f"letter frames hold 1..26 elements, got {n}")
        return cls(tuple(chr(ord("A") + i) for i in range(n)))

    @classmethod
    def indexed(cls, n: int, prefix: str = "t") -> Frame:
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        """Number of subsets, ``2**n``."""
        return 1 << self.n

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise FrameError(f"{label!r} is not an element of {self.elements}") from None

    def mask(self, subset) -> int:
        """Bitmask for ``subset``.

        Accepts an ``int`` mask, a ``"A+B"`` string, a single label, ``"_"``
        for the empty set, an iterable of labels, or (for frames whose labels
        are single characters) a run of characters such as ``"AB"``.
        """
        if isinstance(subset, (int, np.integer)):
            bits = int(subset)
            if not 0 <= bits <= self.full:
                raise FrameError(f"mask {bits} outside frame of size {self.n}")
            return bits
        if isinstance(subset, str):
            text = subset.strip()
            if text in ("", "_"):
                return 0
            if text in self._index:
                return 1 << self._index[text]
            if "+" in text:
                parts = [p.strip() for p in text.split("+")]
            elif all(len(e) == 1 for e in self.elements):
                parts = list(text)
            else:
                parts = [text]
            return self.mask(parts)
        bits = 0
        for label in subset:
            bits |= 1 << self.index(label)
        return bits

    def labels(self, bits: int) -> tuple[str, ...]:
        return tuple(e for i, e in enumerate(self.elements) if bits >> i & 1)

    def name(self, bits: int) -> str:
        """Text name of a subset, ``"A+B"`` or ``"_"`` for the empty set."""
        return "+".join(self.labels(bits)) or "_"

    def singletons(self) -> list[int]:
        return [1 << i for i in range(self.n)]


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def is_subset(a: int, b: int) -> bool:
    """``a ⊆ b`` (non-strict)."""
    return a & b == a


def _same_frame(a, b):
    if a.frame != b.frame:
        raise FrameMismatchError(f"frames differ: {a.frame.elements} vs {b.frame.elements}")


class Verdict(NamedTuple):
    status: str  # "normal", "subnormal" or "invalid"
    reason: str | None = None

    @property
    def ok(self) -> bool:
        return self.status != "invalid"


def _check(frame, masses, tol=NORM_TOL):
    total = 0.0
    for bits, v in masses.items():
        if not math.isfinite(v):
            return Verdict("invalid", f"mass of {frame.name(bits)} is not finite")
        if v < -tol or v > 1 + tol:
            return Verdict("invalid", f"mass of {frame.name(bits)} = {v!r} outside [0, 1]")
        total += v
    if abs(total - 1.0) > tol:
        return Verdict("invalid", f"masses sum to {total!r}, not 1")
    if masses.get(0, 0.0) != 0.0:
        return Verdict("subnormal", "mass on the empty set")
    return Verdict("normal")


class MassFunction:
    """Sparse basic probability assignment over a :class:`Frame`.

    Only focal elements are stored.  Construction validates range and
    normalization unless ``strict=False``; subnormal assignments (mass on the
    empty set) are accepted and operations that need a normal mass say so.
    """

    __slots__ = ("frame", "_masses")

    def __init__(self, frame: Frame, masses: Mapping | Iterable = (), *, strict: bool = True):
        self.frame = frame
        items = masses.items() if isinstance(masses, Mapping) else masses
        store: dict[int, float] = {}
        for subset, value in items:
            bits = frame.mask(subset)
            store[bits] = store.get(bits, 0.0) + float(value)
        self._masses = {b: v for b, v in sorted(store.items()) if v != 0.0}
        if strict:
            verdict = _check(frame, self._masses)
            if not verdict.ok:
                raise InvalidMassError(verdict.reason)

    @classmethod
    def from_vector(cls, frame: Frame, vector, *, prune: float = 1e-15, strict: bool = True) -> MassFunction:
        vec = np.asarray(vector, dtype=float)
        if vec.shape != (frame.size,):
            raise ValueError(f"expected a vector of length {frame.size}, got shape {vec.shape}")
        items = ((int(b), float(vec[b])) for b in np.flatnonzero(np.abs(vec) > prune))
        return cls(frame, items, strict=strict)

    @classmethod
    def vacuous(cls, frame: Frame) -> MassFunction:
        return cls(frame, {frame.full: 1.0})

    def __getitem__(self, subset) -> float:
        return self._masses.get(self.frame.mask(subset), 0.0)

    def __iter__(self):
        return iter(self._masses)

    def __len__(self):
        return len(self._masses)

    def items(self):
        return self._masses.items()

    @property
    def focal(self) -> tuple[int, ...]:
        return tuple(self._masses)

    @property
    def is_normal(self) -> bool:
        return 0 not in self._masses

    @property
    def empty_mass(self) -> float:
        return self._masses.get(0, 0.0)

    def total(self) -> float:
        return math.fsum(self._masses.values())

    def to_vector(self) -> np.ndarray:
        vec = np.zeros(self.frame.size)
        for bits, v in self._masses.items():
            vec[bits] = v
        return vec

    def to_dict(self) -> dict[str, float]:
        return {self.frame.name(b): v for b, v in self._masses.items()}

    def isclose(self, other: MassFunction, tol: float = 1e-9) -> bool:
        if self.frame != other.frame:
            return False
        keys = set(self._masses) | set(other._masses)
        return all(abs(self._masses.get(k, 0.0) - other._masses.get(k, 0.0)) <= tol for k in keys)

    def __eq__(self, other):
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self._masses == other._masses

    def __hash__(self):
        return hash((self.frame, tuple(self._masses.items())))

    def __repr__(self):
        body = ", ".join(f"{self.frame.name(b)}: {v:.6g}" for b, v in self._masses.items())
        return f"MassFunction({{{body}}})"


@dataclass(frozen=True)
class BeliefInterval:
    lower: float
    upper: float


class ProbabilityMassFunction:
    """Per-element probability distribution over a frame."""

    __slots__ = ("frame", "probs")

    def __init__(self, frame: Frame, probs, *, strict: bool = True):
        arr = np.array(probs, dtype=float)
        if arr.shape != (frame.n,):
            raise InvalidMassError(f"expected {frame.n} probabilities, got {arr.shape}")
        if strict:
            if (arr < -NORM_TOL).any() or (arr > 1 + NORM_TOL).any():
                raise InvalidMassError(f"probabilities outside [0, 1]: {arr}")
            if abs(arr.sum() - 1.0) > NORM_TOL:
                raise InvalidMassError(f"probabilities sum to {arr.sum()!r}, not 1")
        arr.setflags(write=False)
        self.frame = frame
        self.probs = arr

    def __getitem__(self, label) -> float:
        if isinstance(label, (int, np.integer)):
            return float(self.probs[label])
        return float(self.probs[self.frame.index(label)])

    def __len__(self):
        return self.frame.n

    def __iter__(self):
        return iter(self.probs.tolist())

    def argmax(self) -> int:
        """Index of the most probable element; ties go to the lowest index."""
        return int(np.argmax(self.probs))

    def as_mass(self) -> MassFunction:
        """Lift to a bayesian mass function (singleton focal elements)."""
        return MassFunction(self.frame, ((1 << i, p) for i, p in enumerate(self.probs)), strict=False)

    def isclose(self, other, tol: float = 1e-9) -> bool:
        values = other.probs if isinstance(other, ProbabilityMassFunction) else np.asarray(other, float)
        return values.shape == self.probs.shape and bool(np.all(np.abs(values - self.probs) <= tol))

    def __eq__(self, other):
        if not isinstance(other, ProbabilityMassFunction):
            return NotImplemented
        return self.frame == other.frame and np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash((self.frame, self.probs.tobytes()))

    def __repr__(self):
        body = ", ".join(f"{e}: {p:.4f}" for e, p in zip(self.frame.elements, self.probs))
        return f"ProbabilityMassFunction({{{body}}})"


def mass(frame: Frame, masses: Mapping, **kw) -> MassFunction:
    return MassFunction(frame, masses, **kw)


def pmf(frame: Frame, probs) -> ProbabilityMassFunction:
    return ProbabilityMassFunction(frame, probs)


def to_mass(x) -> MassFunction:
    return x.as_mass() if isinstance(x, ProbabilityMassFunction) else x


def validate(m: MassFunction) -> Verdict:
    """Report whether ``m`` is normal, subnormal or invalid (never raises)."""
    return _check(m.frame, dict(m.items()))


def require_normal(m: MassFunction, what: str = "operation"):
    verdict = validate(m)
    if verdict.status != "normal":
        raise InvalidMassError(f"{what} requires a normal mass function: {verdict.reason}")


def classify_special(m: MassFunction) -> str:
    """One of ``"vacuous"``, ``"bayesian"``, ``"consonant"`` or ``"general"``."""
    require_normal(m, "classify_special")
    focal = list(m.focal)
    if focal == [m.frame.full]:
        return "vacuous"
    if all(popcount(f) == 1 for f in focal):
        return "bayesian"
    chain = sorted(focal, key=popcount)
    if all(is_subset(a, b) for a, b in zip(chain, chain[1:])):
        return "consonant"
    return "general"


# belief functions evaluated at one subset, straight from the focal elements

def bel(m: MassFunction, subset) -> float:
    f = m.frame.mask(subset)
    return math.fsum(v for g, v in m.items() if g and g & f == g)


def pl(m: MassFunction, subset) -> float:
    f = m.frame.mask(subset)
    return math.fsum(v for g, v in m.items() if g & f)


def q(m: MassFunction, subset) -> float:
    f = m.frame.mask(subset)
    return math.fsum(v for g, v in m.items() if g & f == f)


def b_fn(m: MassFunction, subset) -> float:
    return m.empty_mass + bel(m, subset)


def fc(m: MassFunction, subset) -> float:
    """Total mass on subsets comparable with ``subset`` under inclusion."""
    f = m.frame.mask(subset)
    return math.fsum(v for g, v in m.items() if g & f == g or g & f == f)


def interval(m: MassFunction, subset) -> BeliefInterval:
    return BeliefInterval(bel(m, subset), pl(m, subset))


def singleton_bel(m: MassFunction) -> np.ndarray:
    return np.array([m[s] for s in m.frame.singletons()])


def singleton_pl(m: MassFunction) -> np.ndarray:
    out = np.zeros(m.frame.n)
    for g, v in m.items():
        for i in range(m.frame.n):
            if g >> i & 1:
                out[i] += v
    return out


# dense vectors over the whole power set

def q_vector(m: MassFunction) -> np.ndarray:
    return kernels.superset_sum(m.to_vector(), m.frame.n)


def b_vector(m: MassFunction) -> np.ndarray:
    return kernels.subset_sum(m.to_vector(), m.frame.n)


def bel_vector(m: MassFunction) -> np.ndarray:
    return b_vector(m) - m.empty_mass


def pl_vector(m: MassFunction) -> np.ndarray:
    # pl(F) = 1 - b(F^c), over the total mass so subnormal inputs work
    b = b_vector(m)
    full = m.frame.full
    idx = np.arange(m.frame.size)
    return m.total() - b[full ^ idx]


def fc_vector(m: MassFunction) -> np.ndarray:
    return kernels.full_causality(m.to_vector(), m.frame.n)


def _recovered(frame, vec, tol, what):
    worst = float(vec.min()) if vec.size else 0.0
    if worst < -tol:
        raise InversionError(f"{what} inversion produced negative mass {worst!r}")
    vec = np.where(vec < 0, 0.0, vec)
    total = vec.sum()
    if abs(total - 1.0) > max(tol, NORM_TOL):
        raise InversionError(f"{what} inversion produced total mass {total!r}")
    return MassFunction.from_vector(frame, vec, prune=tol * 1e-3, strict=False)


def mass_from_q(frame: Frame, qvec, tol: float = 1e-9) -> MassFunction:
    """Möbius inversion of a commonality vector indexed by bitmask."""
    return _recovered(frame, kernels.superset_diff(qvec, frame.n), tol, "commonality")


def mass_from_b(frame: Frame, bvec, tol: float = 1e-9) -> MassFunction:
    """Möbius inversion of an implicability vector indexed by bitmask."""
    return _recovered(frame, kernels.subset_diff(bvec, frame.n), tol, "implicability")


def comparability_matrix(n: int) -> np.ndarray:
    """``M[F, G] = 1`` iff ``F ⊆ G`` or ``G ⊆ F`` over all ``2**n`` subsets."""
    idx = np.arange(1 << n)
    meet = idx[:, None] & idx[None, :]
    return ((meet == idx[:, None]) | (meet == idx[None, :])).astype(float)


_FC_INVERTIBLE: dict[int, bool] = {}


def fc_invertible(n: int) -> bool:
    """Whether full-causality values on non-empty subsets determine the mass."""
    if n not in _FC_INVERTIBLE:
        sub = comparability_matrix(n)[1:, 1:]
        _FC_INVERTIBLE[n] = int(np.linalg.matrix_rank(sub)) == sub.shape[0]
    return _FC_INVERTIBLE[n]


def mass_from_fc(frame: Frame, fcvec, tol: float = 1e-9) -> MassFunction:
    """Recover a normal mass function from its full-causality vector.

    The comparability matrix restricted to non-empty subsets is invertible
    only for small frames; otherwise :class:`UnsupportedDimensionError`.
    """
    n = frame.n
    vec = np.asarray(fcvec, dtype=float)
    if vec.shape != (1 << n,):
        raise ValueError(f"expected a vector of length {1 << n}, got shape {vec.shape}")
    if not fc_invertible(n):
        raise UnsupportedDimensionError(
            f"full-causality matrix is singular for n={n}; the mass is not determined by its FC values"
        )
    sub = comparability_matrix(n)[1:, 1:]
    out = np.zeros(1 << n)
    out[1:] = np.linalg.solve(sub, vec[1:])
    return _recovered(frame, out, tol, "full-causality")
