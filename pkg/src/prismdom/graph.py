"""Simple undirected graphs on vertices 0..n-1 with bitmask adjacency."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, TextIO

import numpy as np

MAX_VERTICES = 64
MAX_BASE_VERTICES = 32

VertexSet = frozenset  # frozenset[int]; masks are plain ints


class GraphError(ValueError):
    """Malformed graph input or out-of-range vertex."""


class EdgeListParseError(GraphError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the open neighbourhood of v as a bitmask."""

    n: int
    adj: tuple[int, ...]
    m: int = field(init=False)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"graph order {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length differs from n")
        limit = (1 << self.n) - 1
        total = 0
        for v, nb in enumerate(self.adj):
            if nb & ~limit:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise GraphError(f"self-loop at {v}")
            total += nb.bit_count()
        for v, nb in enumerate(self.adj):
            for u in from_mask(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")
        object.__setattr__(self, "m", total // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in from_mask(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range 0..{self.n - 1}")

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(nb | 1 << v for v, nb in enumerate(self.adj))

    @cached_property
    def closed_array(self) -> np.ndarray:
        """Closed neighbourhoods as the ``uint64`` array the kernels consume."""
        arr = np.array(self.closed_masks, dtype=np.uint64)
        arr.setflags(write=False)
        return arr

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in from_mask(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def has_isolated_vertex(self) -> bool:
        return any(nb == 0 for nb in self.adj)

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        edges = self.edges() + [(u + shift, v + shift) for u, v in other.edges()]
        return Graph.from_edges(self.n + other.n, edges)


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    g._check_vertex(v)
    return from_mask(g.closed_masks[v])


def _check_set(g: Graph, s: Iterable[int]) -> int:
    mask = to_mask(s)
    if mask >> g.n:
        raise GraphError(f"vertex set contains a vertex outside 0..{g.n - 1}")
    return mask


def coverage_mask(g: Graph, s: Iterable[int]) -> int:
    mask = _check_set(g, s)
    acc = 0
    for v in from_mask(mask):
        acc |= g.closed_masks[v]
    return acc


def coverage(g: Graph, s: Iterable[int]) -> int:
    """|N[S]|, the number of vertices dominated by S."""
    return coverage_mask(g, s).bit_count()


def max_degree(g: Graph) -> tuple[int, frozenset[int]]:
    if g.n == 0:
        raise GraphError("max degree of the empty graph is undefined")
    degs = [nb.bit_count() for nb in g.adj]
    top = max(degs)
    return top, frozenset(v for v, d in enumerate(degs) if d == top)


def is_independent(g: Graph, m: Iterable[int]) -> bool:
    mask = _check_set(g, m)
    return all(not (g.adj[v] & mask) for v in from_mask(mask))


# -- generators -------------------------------------------------------------

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014); portable 64-bit stream.

    state += 0x9E3779B97F4A7C15; z = state;
    z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB;
    return z ^ z>>31        (all arithmetic mod 2**64)
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound) as ``next() % bound``."""
        return self.next() % bound

    def __iter__(self) -> Iterator[int]:
        while True:
            yield self.next()


FAMILIES = ("path", "cycle", "complete", "star", "random")


def path(n: int) -> Graph:
    return generate_family("path", n)


def cycle(n: int) -> Graph:
    return generate_family("cycle", n)


def complete(n: int) -> Graph:
    return generate_family("complete", n)


def star(n: int) -> Graph:
    return generate_family("star", n)


def random_graph(n: int, seed: int, density: Fraction | str | float = Fraction(1, 2)) -> Graph:
    return generate_family("random", n, seed=seed, density=density)


def generate_family(kind: str, n: int, seed: int | None = None,
                    density: Fraction | str | float | None = None) -> Graph:
    """Deterministic labelled graph of the given family.

    ``random`` walks the pairs (i, j), i < j, in lexicographic order and keeps
    a pair when ``x % b < a`` for the next SplitMix64 output x and density a/b.
    """
    if n < 1:
        raise GraphError(f"{kind} needs n >= 1, got {n}")
    if n > MAX_BASE_VERTICES:
        raise GraphError(f"n={n} exceeds the supported {MAX_BASE_VERTICES} base vertices")
    if kind == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        if n < 3:
            raise GraphError(f"cycle needs n >= 3, got {n}")
        edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    elif kind == "complete":
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif kind == "star":
        edges = [(0, j) for j in range(1, n)]
    elif kind == "random":
        if seed is None or density is None:
            raise GraphError("random graphs need both seed and density")
        dens = Fraction(density)
        if not 0 <= dens <= 1:
            raise GraphError(f"density {dens} outside [0, 1]")
        rng = SplitMix64(seed)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.below(dens.denominator) < dens.numerator]
    else:
        raise GraphError(f"unknown family {kind!r}; expected one of {', '.join(FAMILIES)}")
    return Graph.from_edges(n, edges)


# -- edge-list text format ----------------------------------------------------

def parse_edge_list(text: str, one_indexed: bool = False) -> Graph:
    """Parse ``n m`` followed by m lines ``u v``; ``#`` starts a comment line."""
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    shift = 1 if one_indexed else 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListParseError("negative header value", lineno)
            header = (a, b)
            continue
        u, v = a - shift, b - shift
        if u > v:
            u, v = v, u
        if not (0 <= u < v < header[0]):
            raise EdgeListParseError(f"edge {a} {b} invalid for n={header[0]}", lineno)
        if (u, v) in seen:
            raise EdgeListParseError(f"duplicate edge {a} {b}", lineno)
        seen.add((u, v))
        edges.append((u, v))
    if header is None:
        raise EdgeListParseError("missing 'n m' header", 1)
    if len(edges) != header[1]:
        raise EdgeListParseError(f"header promises {header[1]} edges, found {len(edges)}", 1)
    try:
        return Graph.from_edges(header[0], edges)
    except GraphError as exc:
        raise EdgeListParseError(str(exc), 1) from None


def format_edge_list(g: Graph, one_indexed: bool = False) -> str:
    shift = 1 if one_indexed else 0
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u + shift} {v + shift}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(path: str, one_indexed: bool = False) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), one_indexed)


def write_edge_list(g: Graph, out: TextIO, one_indexed: bool = False) -> None:
    out.write(format_edge_list(g, one_indexed))


def banner_graph() -> Graph:
    """4-cycle 0-1-3-2 with a pendant vertex 4 on 3."""
    return Graph.from_edges(5, [(0, 1), (2, 3), (3, 1), (2, 0), (3, 4)])


def gadget_graph() -> Graph:
    """v1=0, v2=1 joined through c=2, with pendant d1=3 on v1 and d2=4 on v2."""
    return Graph.from_edges(5, [(0, 2), (1, 2), (0, 3), (1, 4)])
