"""Belief evolution network: the layered one-element-removal DAG over subsets."""
from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterator

from .core import Frame, MassFunction, popcount
from .errors import FrameError, FrameMismatchError


class BeliefEvolutionNetwork:
    """Layers ``1..n`` top-down; layer ``l`` holds the subsets of size ``n - l + 1``.

    The empty set never appears.  Edges run from a subset to each subset
    obtained by removing exactly one element, and are computed on demand.
    """

    def __init__(self, frame: Frame):
        self.frame = frame

    @property
    def n(self) -> int:
        return self.frame.n

    def cardinality(self, layer: int) -> int:
        if not 1 <= layer <= self.n:
            raise IndexError(f"layer {layer} outside 1..{self.n}")
        return self.n - layer + 1

    def layer_of(self, bits: int) -> int:
        self._check(bits)
        return self.n - popcount(bits) + 1

    def layer(self, layer: int) -> list[int]:
        """Subsets in ``layer``, ascending by bitmask."""
        k = self.cardinality(layer)
        nodes = [sum(1 << i for i in c) for c in combinations(range(self.n), k)]
        return sorted(nodes)

    @property
    def layers(self) -> list[list[int]]:
        return [self.layer(l) for l in range(1, self.n + 1)]

    def nodes(self) -> Iterator[int]:
        """Every node, ascending by bitmask."""
        return iter(range(1, self.frame.full + 1))

    def __len__(self):
        return self.frame.full

    def __contains__(self, bits) -> bool:
        return isinstance(bits, int) and 0 < bits <= self.frame.full

    def _check(self, bits):
        if bits not in self:
            raise FrameError(f"{bits!r} is not a node of the network (empty set or outside the frame)")

    def children(self, bits: int) -> list[int]:
        self._check(bits)
        if popcount(bits) == 1:
            return []
        return sorted(bits ^ (1 << i) for i in range(self.n) if bits >> i & 1)

    def parents(self, bits: int) -> list[int]:
        self._check(bits)
        return sorted(bits | (1 << i) for i in range(self.n) if not bits >> i & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for node in self.nodes():
            for child in self.children(node):
                yield node, child


def build_ben(frame: Frame) -> BeliefEvolutionNetwork:
    return BeliefEvolutionNetwork(frame)


def export_dot(
    ben: BeliefEvolutionNetwork,
    m: MassFunction,
    annotate: Callable[[int], str] | None = None,
    precision: int = 4,
) -> str:
    """Render the network as a DOT digraph, one rank per layer.

    Node ``n<bits>`` is labelled with its subset and mass; ``annotate`` may add
    a third label line per node.  Output is byte-stable for equal inputs.
    """
    if m.frame != ben.frame:
        raise FrameMismatchError(f"frames differ: {m.frame.elements} vs {ben.frame.elements}")
    frame = ben.frame
    out = [
        "digraph BEN {",
        "  rankdir=TB;",
        '  node [shape=box, fontname="Helvetica"];',
    ]
    for layer in range(1, ben.n + 1):
        nodes = ben.layer(layer)
        out.append(f"  subgraph layer{layer} {{")
        out.append("    rank=same;")
        for bits in nodes:
            label = f"{frame.name(bits)}\\n{m[bits]:.{precision}f}"
            if annotate is not None:
                extra = annotate(bits)
                if extra:
                    label += "\\n" + str(extra).replace('"', '\\"')
            style = ', style=filled, fillcolor="#dde8f5"' if m[bits] > 0 else ""
            out.append(f'    n{bits} [label="{label}"{style}];')
        out.append("  }")
    for parent, child in sorted(ben.edges()):
        out.append(f"  n{parent} -> n{child};")
    out.append("}")
    return "\n".join(out) + "\n"
