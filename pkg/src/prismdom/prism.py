"""Prisms of graphs: two copies of G joined by the matching v -- n+pi(v)."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .graph import Graph, GraphError, from_mask, to_mask


class PermutationError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(len(self.image))):
            raise PermutationError(f"{list(self.image)} is not a permutation of 0..{len(self.image) - 1}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        image = list(range(n))
        touched: set[int] = set()
        for cyc in cycles:
            for v in cyc:
                if not 0 <= v < n:
                    raise PermutationError(f"cycle entry {v} out of range 0..{n - 1}")
                if v in touched:
                    raise PermutationError(f"vertex {v} appears in more than one cycle position")
                touched.add(v)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                image[a] = b
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for v, w in enumerate(self.image):
            inv[w] = v
        return tuple(inv)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.image, dtype=np.int64)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting from its smallest element."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            v = start
            while not seen[v]:
                seen[v] = True
                cyc.append(v)
                v = self.image[v]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def format_line(self, one_indexed: bool = False) -> str:
        shift = 1 if one_indexed else 0
        return " ".join(str(w + shift) for w in self.image)

    def format_cycles(self, one_indexed: bool = False) -> str:
        shift = 1 if one_indexed else 0
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(v + shift) for v in c) + ")" for c in cycs)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, n: int, one_indexed: bool = False) -> Permutation:
    """Read ``identity``, cycle notation like ``(2 3 4)(1 5)``, or a one-line image list."""
    raw, text = text, text.strip()
    shift = 1 if one_indexed else 0
    if text in ("identity", "id", "()"):
        return Permutation.identity(n)
    if text.startswith("("):
        if _CYCLE_RE.sub("", text).strip():
            raise PermutationError(f"cannot parse cycle notation {raw!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            try:
                cycles.append([int(tok) - shift for tok in body.replace(",", " ").split()])
            except ValueError:
                raise PermutationError(f"non-integer entry in {raw!r}") from None
        return Permutation.from_cycles(n, cycles)
    try:
        image = [int(tok) - shift for tok in text.split()]
    except ValueError:
        raise PermutationError(f"cannot parse permutation {raw!r}") from None
    if len(image) != n:
        raise PermutationError(f"permutation has {len(image)} entries, graph has {n} vertices")
    return Permutation(tuple(image))


def read_permutation(path: str, n: int, one_indexed: bool = False) -> Permutation:
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 1:
        raise PermutationError(f"{path}: expected a single permutation line")
    return parse_permutation(lines[0], n, one_indexed)


@dataclass(frozen=True)
class PrismGraph:
    base: Graph
    pi: Permutation
    combined: Graph

    @property
    def n(self) -> int:
        return self.base.n

    def mirror(self, u: int) -> int:
        """Index of u's twin in the second copy."""
        return self.n + u


def build_prism(g: Graph, pi: Permutation) -> PrismGraph:
    if pi.n != g.n:
        raise PermutationError(f"permutation on {pi.n} elements for a graph on {g.n} vertices")
    if 2 * g.n > 64:
        raise GraphError(f"prism of a {g.n}-vertex graph exceeds 64 vertices")
    n = g.n
    adj = [0] * (2 * n)
    for v in range(n):
        adj[v] = g.adj[v] | 1 << (n + pi.image[v])
        adj[n + v] = g.adj[v] << n | 1 << pi.inverse[v]
    return PrismGraph(g, pi, Graph(2 * n, tuple(adj)))


def prism_closed_array(g: Graph, pi: Permutation) -> np.ndarray:
    """Kernel-ready closed neighbourhoods of the prism, without building a Graph."""
    return _kernels.prism_closed(g.closed_array, pi.array)


def mirror_set(pr: PrismGraph, s: Iterable[int], direction: str = "1->2") -> frozenset[int]:
    """Carry S across the matching: v -> n+pi(v) for "1->2", n+w -> pi^-1(w) for "2->1"."""
    n = pr.n
    verts = list(s)
    if direction in ("1->2", "12", "forward"):
        if any(not 0 <= v < n for v in verts):
            raise GraphError("mirror_set 1->2 needs every vertex in the first copy")
        return frozenset(n + pr.pi.image[v] for v in verts)
    if direction in ("2->1", "21", "backward"):
        if any(not n <= v < 2 * n for v in verts):
            raise GraphError("mirror_set 2->1 needs every vertex in the second copy")
        return frozenset(pr.pi.inverse[v - n] for v in verts)
    raise ValueError(f"unknown direction {direction!r}")


def compute_i(pr: PrismGraph, u: int) -> int:
    """|N[u] & N[u']| in the prism, u' = n+u being u's twin."""
    if not 0 <= u < pr.n:
        raise GraphError(f"vertex {u} is not in the first copy 0..{pr.n - 1}")
    closed = pr.combined.closed_masks
    return (closed[u] & closed[pr.mirror(u)]).bit_count()


def restrict(g: Graph, vertices: Sequence[int]) -> Graph:
    """Induced subgraph relabelled to 0..len(vertices)-1 in the given order."""
    index = {v: i for i, v in enumerate(vertices)}
    keep = to_mask(vertices)
    adj = []
    for v in vertices:
        adj.append(to_mask(index[w] for w in from_mask(g.adj[v] & keep)))
    return Graph(len(vertices), tuple(adj))
